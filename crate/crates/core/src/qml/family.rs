//! q-Mittag-Leffler series: the one-parameter-weight q-analogue, the
//! q-Prabhakar function and the extended function with beta-ratio weights.

use num_complex::Complex64;

use super::params::ExtendedMLParams;
use crate::error::{QError, Result};
use crate::qcore::series::sum_ratio_series;
use crate::qcore::{ln_q_gamma, ln_q_rgamma, EvalResult, QBase, Truncation};

/// Weight `w_m` multiplying `u^m / Γ_q(ηm+κ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Weight {
    /// `w_m = 1`.
    One,
    /// `w_m = (q^σ;q)_m / (q;q)_m`.
    Prabhakar(Complex64),
    /// `w_m = B_q(σ+m, c-σ) / B_q(σ, c-σ) · (q^c;q)_m / (q;q)_m`.
    Extended { sigma: Complex64, c: Complex64 },
}

/// Sequential generator of series terms in split form `(w_m, ln rest)`.
///
/// Must be driven with `m = 0, 1, 2, …` in order. The beta ratio of the
/// extended weight advances by `Γ_q(z+1) = [z]_q Γ_q(z)`, one factor
/// `[σ+m]_q / [c+m]_q` per step.
pub(crate) struct TermGen {
    weight: Weight,
    q: QBase,
    eta: f64,
    kappa: Complex64,
    ln_z: Option<Complex64>,
    run: Complex64,
    beta_run: Complex64,
}

impl TermGen {
    pub(crate) fn new(z: Complex64, eta: f64, kappa: Complex64, weight: Weight, q: QBase) -> Result<Self> {
        Ok(Self {
            weight,
            q,
            eta,
            kappa,
            ln_z: (z.norm() != 0.0).then(|| z.ln()),
            run: Complex64::new(1.0, 0.0),
            beta_run: Complex64::new(1.0, 0.0),
        })
    }

    fn weight(&mut self, m: usize) -> Complex64 {
        let q = self.q;
        let k = m.saturating_sub(1) as f64;
        let step = |run: &mut Complex64, upper: Complex64, lower: Complex64| {
            if m > 0 {
                *run *= q.one_minus_pow(upper + k) / q.one_minus_pow(lower + k);
            }
        };
        let one = Complex64::new(1.0, 0.0);
        match self.weight {
            Weight::One => one,
            Weight::Prabhakar(sigma) => {
                step(&mut self.run, sigma, one);
                self.run
            }
            Weight::Extended { sigma, c } => {
                step(&mut self.run, c, one);
                step(&mut self.beta_run, sigma, c);
                self.beta_run * self.run
            }
        }
    }

    /// The m-th term split as `(w_m, ln(z^m / Γ_q(ηm+κ)) + extra)`, or `None`
    /// when the term vanishes.
    pub(crate) fn parts(&mut self, m: usize, extra: Option<Complex64>) -> Result<Option<(Complex64, Complex64)>> {
        let w = self.weight(m);
        let rg = ln_q_rgamma(Complex64::new(self.eta * m as f64, 0.0) + self.kappa, self.q)?;
        let power = match (m, self.ln_z) {
            (0, _) => Some(Complex64::new(0.0, 0.0)),
            (_, Some(l)) => Some(l * m as f64),
            (_, None) => None,
        };
        Ok(match (rg, extra, power) {
            (Some(a), Some(b), Some(p)) => Some((w, a + b + p)),
            _ => None,
        })
    }

    pub(crate) fn term(&mut self, m: usize, extra: Option<Complex64>) -> Result<Complex64> {
        Ok(match self.parts(m, extra)? {
            Some((w, ln)) => w * ln.exp(),
            None => Complex64::new(0.0, 0.0),
        })
    }
}

/// Sums `Σ w_m z^m / Γ_q(ηm+κ) · exp(extra(m))`; `extra` returning `None`
/// marks a vanishing term. No domain checks: `limit_ratio` must be below one.
pub(crate) fn sum_extended<F>(
    z: Complex64,
    limit_ratio: f64,
    eta: f64,
    kappa: Complex64,
    weight: Weight,
    q: QBase,
    trunc: &Truncation,
    mut extra: F,
) -> Result<EvalResult>
where
    F: FnMut(usize) -> Result<Option<Complex64>>,
{
    let mut gen = TermGen::new(z, eta, kappa, weight, q)?;
    if z.norm() == 0.0 {
        let ex = extra(0)?;
        return Ok(EvalResult { value: gen.term(0, ex)?, terms_used: 1, tail_estimate: 0.0, converged: true });
    }
    sum_ratio_series(trunc, limit_ratio, |m| {
        let ex = extra(m)?;
        gen.term(m, ex)
    })
}

/// The extended series with unconstrained `κ` (poles of `Γ_q(ηm+κ)`
/// contribute zero terms).
pub(crate) fn extended_unchecked(
    z: Complex64,
    eta: f64,
    kappa: Complex64,
    sigma: Complex64,
    c: Complex64,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    let limit = check_disk(z, eta, q)?;
    sum_extended(z, limit, eta, kappa, Weight::Extended { sigma, c }, q, trunc, |_| Ok(Some(Complex64::new(0.0, 0.0))))
}

/// The radius `(1-q)^{-η}` of the disk of absolute convergence.
pub fn convergence_radius(eta: f64, q: QBase) -> f64 {
    (1.0 - q.value()).powf(-eta)
}

/// Rejects arguments outside the convergence disk; returns the limiting
/// term ratio `|z| (1-q)^η` for those inside.
pub(crate) fn check_disk(z: Complex64, eta: f64, q: QBase) -> Result<f64> {
    let radius = convergence_radius(eta, q);
    if z.norm() >= radius {
        return Err(QError::DomainError(format!(
            "|u| = {} is outside the convergence disk of radius {radius}",
            z.norm()
        )));
    }
    Ok(z.norm() / radius)
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(QError::InvalidArgument(format!("eta must be real and positive, got {eta}")))
    }
}

fn check_positive(name: &str, v: Complex64) -> Result<()> {
    if v.re > 0.0 {
        Ok(())
    } else {
        Err(QError::InvalidArgument(format!("{name} needs a positive real part, got {v}")))
    }
}

/// The q-Mittag-Leffler function `e_{η,κ}(u;q) = Σ u^m / Γ_q(ηm+κ)`.
pub fn q_mittag_leffler(u: Complex64, eta: f64, kappa: Complex64, q: QBase, trunc: &Truncation) -> Result<EvalResult> {
    check_eta(eta)?;
    check_positive("kappa", kappa)?;
    let limit = check_disk(u, eta, q)?;
    sum_extended(u, limit, eta, kappa, Weight::One, q, trunc, |_| Ok(Some(Complex64::new(0.0, 0.0))))
}

/// The q-Prabhakar function `Σ (q^σ;q)_m / (q;q)_m · u^m / Γ_q(ηm+κ)`.
pub fn q_ml_prabhakar(
    u: Complex64,
    eta: f64,
    kappa: Complex64,
    sigma: Complex64,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    check_eta(eta)?;
    check_positive("kappa", kappa)?;
    check_positive("sigma", sigma)?;
    let limit = check_disk(u, eta, q)?;
    sum_extended(u, limit, eta, kappa, Weight::Prabhakar(sigma), q, trunc, |_| Ok(Some(Complex64::new(0.0, 0.0))))
}

/// `B_q(σ+m, c-σ) / B_q(σ, c-σ)` computed from q-gamma values.
///
/// Equals the q-shifted factorial ratio `(q^σ;q)_m / (q^c;q)_m`.
pub fn beta_ratio(sigma: Complex64, c: Complex64, m: u32, q: QBase) -> Result<Complex64> {
    if !(sigma.re > 0.0 && c.re > sigma.re) {
        return Err(QError::InvalidArgument(format!("need Re(c) > Re(sigma) > 0, got c = {c}, sigma = {sigma}")));
    }
    let mf = m as f64;
    let gap = ln_q_gamma(c - sigma, q)?;
    let shifted = ln_q_gamma(sigma + mf, q)? + gap - ln_q_gamma(c + mf, q)?;
    let base = ln_q_gamma(sigma, q)? + gap - ln_q_gamma(c, q)?;
    let v = (shifted - base).exp();
    Ok(if sigma.im == 0.0 && c.im == 0.0 { Complex64::new(v.re, 0.0) } else { v })
}

/// The extended q-Mittag-Leffler function `E^{(σ;c)}_{η,κ}(u;q)`.
///
/// Arguments on or outside the circle `|u| = (1-q)^{-η}` are rejected with
/// [`QError::DomainError`].
pub fn q_ml_extended(u: Complex64, p: &ExtendedMLParams, q: QBase, trunc: &Truncation) -> Result<EvalResult> {
    extended_unchecked(u, p.eta(), p.kappa(), p.sigma(), p.c(), q, trunc)
}

/// Observed ratio `|s_{m+1} / s_m|` of consecutive terms of the extended
/// series at `u`. Works for any `u`, including outside the disk.
pub fn series_term_ratio(u: Complex64, p: &ExtendedMLParams, q: QBase, m: usize) -> Result<f64> {
    let mut gen = TermGen::new(u, p.eta(), p.kappa(), Weight::Extended { sigma: p.sigma(), c: p.c() }, q)?;
    let zero = Some(Complex64::new(0.0, 0.0));
    for k in 0..m {
        gen.term(k, zero)?;
    }
    let cur = gen.term(m, zero)?;
    let next = gen.term(m + 1, zero)?;
    Ok(match (cur.norm(), next.norm()) {
        (a, b) if a > 0.0 => b / a,
        (_, b) if b == 0.0 => 0.0,
        _ => f64::INFINITY,
    })
}

/// A precomputed truncation of a q-Mittag-Leffler series, for repeated
/// evaluation at arguments `|z| ≤ bound` (quadrature grids, transforms).
#[derive(Debug, Clone)]
pub struct SeriesEvaluator {
    coeffs: Vec<Complex64>,
    bound: f64,
    tail: f64,
}

impl SeriesEvaluator {
    /// Truncation of `E^{(σ;c)}_{η,κ}` valid on `|z| ≤ bound`.
    pub fn extended(p: &ExtendedMLParams, q: QBase, bound: f64, trunc: &Truncation) -> Result<Self> {
        Self::build(p.eta(), p.kappa(), Weight::Extended { sigma: p.sigma(), c: p.c() }, q, bound, trunc)
    }

    /// Truncation of the q-Prabhakar function valid on `|z| ≤ bound`.
    pub fn prabhakar(
        eta: f64,
        kappa: Complex64,
        sigma: Complex64,
        q: QBase,
        bound: f64,
        trunc: &Truncation,
    ) -> Result<Self> {
        check_eta(eta)?;
        check_positive("kappa", kappa)?;
        check_positive("sigma", sigma)?;
        Self::build(eta, kappa, Weight::Prabhakar(sigma), q, bound, trunc)
    }

    fn build(eta: f64, kappa: Complex64, weight: Weight, q: QBase, bound: f64, trunc: &Truncation) -> Result<Self> {
        if !(bound >= 0.0) {
            return Err(QError::InvalidArgument(format!("bound must be nonnegative, got {bound}")));
        }
        let limit = check_disk(Complex64::new(bound, 0.0), eta, q)?;
        let mut gen = TermGen::new(Complex64::new(bound, 0.0), eta, kappa, weight, q)?;
        let zero = Some(Complex64::new(0.0, 0.0));
        if bound == 0.0 {
            return Ok(Self { coeffs: vec![gen.term(0, zero)?], bound, tail: 0.0 });
        }
        let ln_bound = bound.ln();
        let mut coeffs = Vec::new();
        let r = sum_ratio_series(trunc, limit, |m| {
            Ok(match gen.parts(m, zero)? {
                Some((w, ln)) => {
                    // ln carries m·ln(bound); strip it for the coefficient
                    coeffs.push(w * (ln - ln_bound * m as f64).exp());
                    w * ln.exp()
                }
                None => {
                    coeffs.push(Complex64::new(0.0, 0.0));
                    Complex64::new(0.0, 0.0)
                }
            })
        })?;
        Ok(Self { coeffs, bound, tail: r.tail_estimate })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > self.bound * (1.0 + 1e-12) {
            return Err(QError::DomainError(format!(
                "|z| = {} exceeds the evaluator bound {}",
                z.norm(),
                self.bound
            )));
        }
        Ok(self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c))
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Bound on the discarded tail anywhere on `|z| ≤ bound`.
    pub fn tail_estimate(&self) -> f64 {
        self.tail
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }
}
