//! q-numbers, q-shifted factorials, q-power differences and q-binomials.

use num_complex::Complex64;

use super::params::{EvalResult, QBase, Truncation};
use crate::error::{QError, Result};

/// Internal machine-precision cutoff for products without a caller policy.
const FACTOR_TOL: f64 = 1e-17;
const MAX_FACTORS: usize = 50_000_000;

/// Order of a q-shifted factorial `(λ;q)_order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Finite(u32),
    /// Complex order `η`, defined as `(λ;q)_∞ / (λ q^η;q)_∞`.
    Complex(Complex64),
    Infinite,
}

/// Exponent of a q-power difference `(s - t)^{(n)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Integer(u32),
    Real(f64),
}

/// The q-number `[u]_q = (1 - q^u) / (1 - q)`.
pub fn q_number(u: Complex64, q: QBase) -> Complex64 {
    let v = q.one_minus_pow(u) / (1.0 - q.value());
    if u.im == 0.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}

/// `Π_{i<m} (1 - λ q^i)`.
pub(crate) fn pochhammer_finite(lambda: Complex64, q: QBase, m: u32) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    let mut qi = 1.0;
    for _ in 0..m {
        p *= 1.0 - lambda * qi;
        qi *= q.value();
    }
    p
}

/// `(λ;q)_∞ / (λ q^η;q)_∞` carried to machine precision, as a product of
/// factor ratios.
pub(crate) fn pochhammer_ratio(lambda: Complex64, eta: Complex64, q: QBase) -> Result<Complex64> {
    let shifted = lambda * q.pow(eta);
    let big = lambda.norm().max(shifted.norm());
    if big < FACTOR_TOL {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = ((FACTOR_TOL / big).ln() / q.ln()).ceil().max(0.0) + 1.0;
    if n > MAX_FACTORS as f64 {
        return Err(QError::NonConvergence { terms: MAX_FACTORS, tail: f64::INFINITY });
    }
    let mut p = Complex64::new(1.0, 0.0);
    let mut qi = 1.0;
    for _ in 0..n as usize {
        let den = 1.0 - shifted * qi;
        if den.norm() < f64::EPSILON {
            return Err(QError::DivisionByZero(format!(
                "(λq^η;q)_∞ vanishes for λ = {lambda}, η = {eta}"
            )));
        }
        p *= (1.0 - lambda * qi) / den;
        qi *= q.value();
    }
    Ok(p)
}

/// `(λ;q)_∞` carried to machine precision.
pub(crate) fn pochhammer_inf(lambda: Complex64, q: QBase) -> Result<Complex64> {
    let big = lambda.norm();
    if big < FACTOR_TOL {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let n = ((FACTOR_TOL / big).ln() / q.ln()).ceil().max(0.0) + 1.0;
    if n > MAX_FACTORS as f64 {
        return Err(QError::NonConvergence { terms: MAX_FACTORS, tail: f64::INFINITY });
    }
    Ok(pochhammer_finite(lambda, q, n as u32))
}

/// The q-shifted factorial `(λ;q)_order`.
///
/// Finite orders are exact products. The infinite product stops at the first
/// factor with `|λ q^i| < abs_tol` whose geometric tail
/// `|λ| q^{i+1} / (1 - q)`, scaled by the product when that exceeds one, is
/// also below `abs_tol`. Complex orders use the
/// ratio `(λ;q)_∞ / (λ q^η;q)_∞` under the same rule applied to both
/// products.
pub fn q_pochhammer(lambda: Complex64, q: QBase, order: Order, trunc: &Truncation) -> Result<EvalResult> {
    let qv = q.value();
    match order {
        Order::Finite(m) => Ok(EvalResult {
            value: pochhammer_finite(lambda, q, m),
            terms_used: m as usize,
            tail_estimate: 0.0,
            converged: true,
        }),
        Order::Infinite | Order::Complex(_) => {
            let shifted = match order {
                Order::Complex(eta) => Some(lambda * q.pow(eta)),
                _ => None,
            };
            let size = lambda.norm().max(shifted.map_or(0.0, |s| s.norm()));
            let tol = trunc.abs_tol();
            let mut p = Complex64::new(1.0, 0.0);
            let mut qi = 1.0;
            let mut tail = f64::INFINITY;
            for i in 0..trunc.max_terms() {
                p *= 1.0 - lambda * qi;
                if let Some(s) = shifted {
                    let den = 1.0 - s * qi;
                    if den.norm() < f64::EPSILON {
                        return Err(QError::DivisionByZero(format!(
                            "denominator product vanishes at factor {i}"
                        )));
                    }
                    p /= den;
                }
                let factor = size * qi;
                tail = factor * qv / (1.0 - qv);
                if factor < tol && tail * p.norm().max(1.0) <= tol {
                    return Ok(EvalResult { value: p, terms_used: i + 1, tail_estimate: tail, converged: true });
                }
                qi *= qv;
            }
            Err(QError::NonConvergence { terms: trunc.max_terms(), tail })
        }
    }
}

/// The q-analogue of `(s - t)^n`.
///
/// Integer exponents give `Π_{i<n} (s - t q^i)`; a real exponent `τ` gives
/// `s^τ (t/s;q)_τ` with the principal power of `s`.
pub fn q_power_difference(s: f64, t: f64, q: QBase, order: Exponent) -> Result<Complex64> {
    match order {
        Exponent::Integer(n) => {
            let mut p = 1.0;
            let mut qi = 1.0;
            for _ in 0..n {
                p *= s - t * qi;
                qi *= q.value();
            }
            Ok(Complex64::new(p, 0.0))
        }
        Exponent::Real(tau) => {
            if s == 0.0 {
                return Err(QError::InvalidArgument(
                    "q-power difference with s = 0 needs an integer exponent".into(),
                ));
            }
            let base = Complex64::new(s, 0.0).powf(tau);
            let ratio = pochhammer_ratio(Complex64::new(t / s, 0.0), Complex64::new(tau, 0.0), q)?;
            let v = base * ratio;
            Ok(if s > 0.0 { Complex64::new(v.re, 0.0) } else { v })
        }
    }
}

/// The generalized q-binomial coefficient
/// `(q^{-τ};q)_m / (q;q)_m · (-1)^m q^{τm - m(m-1)/2}`.
pub fn q_binomial(tau: Complex64, m: u32, q: QBase) -> Complex64 {
    // (1 - q^{i-τ}) · (-q^{τ-i}) = 1 - q^{τ-i}, which folds the sign and the
    // power prefactor into each factor
    let mut p = Complex64::new(1.0, 0.0);
    for i in 0..m {
        p *= q.one_minus_pow(tau - i as f64) / q.one_minus_powf(i as f64 + 1.0);
    }
    if tau.im == 0.0 {
        Complex64::new(p.re, 0.0)
    } else {
        p
    }
}
