//! Truncation drivers shared by the series, products and q-integrals.

use num_complex::Complex64;

use super::params::{EvalResult, Truncation};
use crate::error::{QError, Result};

/// Exactly-zero terms in a row after which the remainder is treated as
/// having underflowed.
const ZERO_RUN: usize = 8;

/// Sums `Σ term(m)` for a series whose term ratio tends to `limit_ratio < 1`.
///
/// After each nonzero term the remaining tail is bounded geometrically with
/// ratio `max(limit_ratio, observed ratio)`; summation stops once that bound
/// is within [`Truncation::threshold`] of the partial sum.
pub(crate) fn sum_ratio_series<F>(trunc: &Truncation, limit_ratio: f64, mut term: F) -> Result<EvalResult>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    // magnitude and index of the last nonzero term
    let mut prev: Option<(f64, usize)> = None;
    let mut zeros = 0usize;
    let mut tail = f64::INFINITY;
    for m in 0..trunc.max_terms() {
        let t = term(m)?;
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(QError::NonConvergence { terms: m + 1, tail: f64::INFINITY });
        }
        sum += t;
        let a = t.norm();
        if a == 0.0 {
            zeros += 1;
            if zeros >= ZERO_RUN && prev.is_some() && limit_ratio < 1.0 {
                return Ok(EvalResult { value: sum, terms_used: m + 1, tail_estimate: 0.0, converged: true });
            }
            continue;
        }
        zeros = 0;
        if let Some((p, k)) = prev {
            let observed = (a / p).powf(1.0 / (m - k) as f64);
            let r = limit_ratio.max(observed);
            if r < 1.0 {
                tail = a * r / (1.0 - r);
                if tail <= trunc.threshold(sum.norm()) {
                    return Ok(EvalResult { value: sum, terms_used: m + 1, tail_estimate: tail, converged: true });
                }
            }
        }
        prev = Some((a, m));
    }
    Err(QError::NonConvergence { terms: trunc.max_terms(), tail })
}

/// Sums `Σ term(m)` over a geometric grid whose natural decay rate is
/// `grid_ratio` (the base `q` for Jackson-type sums).
///
/// A term counts as small when its geometric tail bound is within
/// tolerance; three small terms in a row end the sum, which keeps isolated
/// zeros of the integrand on the grid from stopping it early.
pub(crate) fn sum_grid_series<F>(trunc: &Truncation, grid_ratio: f64, mut term: F) -> Result<EvalResult>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0usize;
    let mut prev = 0.0f64;
    let mut tail = f64::INFINITY;
    for m in 0..trunc.max_terms() {
        let t = term(m)?;
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(QError::NonConvergence { terms: m + 1, tail: f64::INFINITY });
        }
        sum += t;
        let a = t.norm();
        let observed = if prev > 0.0 && a > 0.0 { a / prev } else { 0.0 };
        let r = if observed < 1.0 { grid_ratio.max(observed) } else { grid_ratio };
        tail = a * r / (1.0 - r);
        if tail <= trunc.threshold(sum.norm()) {
            small_run += 1;
            if small_run == 3 {
                return Ok(EvalResult { value: sum, terms_used: m + 1, tail_estimate: tail, converged: true });
            }
        } else {
            small_run = 0;
        }
        prev = a;
    }
    Err(QError::NonConvergence { terms: trunc.max_terms(), tail })
}
