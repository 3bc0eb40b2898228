//! Closed forms attached to the extended function: the contiguous
//! recurrence, the q-integral representation, the q-derivative rule, the
//! beta-weighted q-integral and the q-Laplace transform.
//!
//! Each routine evaluates one side of an identity; the other side is
//! assembled from independent pieces in [`crate::verify`].

use num_complex::Complex64;

use super::family::{check_disk, convergence_radius, extended_unchecked, sum_extended, SeriesEvaluator, Weight};
use super::params::ExtendedMLParams;
use crate::error::{QError, Result};
use crate::qcore::{is_pole, ln_q_gamma, pochhammer_ratio, q_beta, EvalResult, QBase, Truncation};
use crate::qops::{jackson_integral, TryFn};

fn combine(a: EvalResult, b: EvalResult, coef: Complex64) -> EvalResult {
    EvalResult {
        value: a.value + coef * b.value,
        terms_used: a.terms_used + b.terms_used,
        tail_estimate: a.tail_estimate + coef.norm() * b.tail_estimate,
        converged: a.converged && b.converged,
    }
}

fn weight(p: &ExtendedMLParams) -> Weight {
    Weight::Extended { sigma: p.sigma(), c: p.c() }
}

/// `E^{(σ+1;c+1)}_{η,κ}(u;q) - u q^c E^{(σ+1;c+1)}_{η,η+κ}(u;q)`, the right-hand
/// side of the contiguous recurrence for `E^{(σ;c)}_{η,κ}`.
pub fn recurrence_rhs(u: Complex64, p: &ExtendedMLParams, q: QBase, trunc: &Truncation) -> Result<EvalResult> {
    let one = Complex64::new(1.0, 0.0);
    let shifted = p.with_sigma_c(p.sigma() + one, p.c() + one)?;
    let first = super::q_ml_extended(u, &shifted, q, trunc)?;
    let second = super::q_ml_extended(u, &shifted.with_kappa(p.kappa() + p.eta())?, q, trunc)?;
    Ok(combine(first, second, -u * q.pow(p.c())))
}

/// The q-integral representation
/// `1/B_q(σ,c-σ) ∫_0^1 t^{σ-1} (tq;q)_∞/(tq^{c-σ};q)_∞ E^{c}_{η,κ}(tu;q) d_q t`,
/// where `E^{c}` is the q-Prabhakar function with upper parameter `c`.
pub fn integral_representation(u: Complex64, p: &ExtendedMLParams, q: QBase, trunc: &Truncation) -> Result<EvalResult> {
    let (sigma, c) = (p.sigma(), p.c());
    if (c - sigma).norm() == 0.0 {
        return Err(QError::InvalidArgument("integral representation needs sigma != c".into()));
    }
    check_disk(u, p.eta(), q)?;
    let inner = SeriesEvaluator::prabhakar(p.eta(), p.kappa(), c, q, u.norm(), trunc)?;
    let gap = c - sigma;
    let qv = q.value();
    // (tq;q)_∞ / (tq^{c-σ};q)_∞ as the shifted factorial (tq;q)_{c-σ-1}
    let integrand = TryFn(|t: Complex64| {
        let kernel = pochhammer_ratio(t * qv, gap - 1.0, q)?;
        Ok(t.powc(sigma - 1.0) * kernel * inner.eval(t * u)?)
    });
    let r = jackson_integral(&integrand, 1.0, q, trunc)?;
    let b = q_beta(sigma, gap, q)?;
    let mut out = r.scaled(1.0 / b);
    out.tail_estimate += inner.tail_estimate();
    Ok(out)
}

/// Closed form of `D_q^m [u^{κ-1} E^{(σ;c)}_{η,κ}(λu^η;q)]`, namely
/// `u^{κ-m-1} E^{(σ;c)}_{η,κ-m}(λu^η;q)`.
///
/// Terms whose `Γ_q(ηk + κ - m)` sits on a pole contribute zero.
pub fn derivative_closed_form(
    u: Complex64,
    lambda: Complex64,
    p: &ExtendedMLParams,
    m: u32,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if m < 1 {
        return Err(QError::InvalidArgument("derivative order must be at least 1".into()));
    }
    if u.norm() == 0.0 {
        return Err(QError::InvalidArgument("derivative closed form needs u != 0".into()));
    }
    let z = lambda * u.powf(p.eta());
    let kappa = p.kappa() - m as f64;
    let r = extended_unchecked(z, p.eta(), kappa, p.sigma(), p.c(), q, trunc)?;
    Ok(r.scaled(u.powc(kappa - 1.0)))
}

/// Series value of `∫_0^1 u^{ξ-1} (qu;q)_{ζ-1} E^{(σ;c)}_{η,κ}(x u^ρ;q) d_q u`:
///
/// `Σ_m w_m x^m Γ_q(ξ+ρm) Γ_q(ζ) / (Γ_q(ηm+κ) Γ_q(ξ+ζ+ρm))`.
#[allow(clippy::too_many_arguments)]
pub fn beta_weighted_integral(
    x: Complex64,
    xi: Complex64,
    zeta: Complex64,
    rho: f64,
    p: &ExtendedMLParams,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if !(xi.re > 0.0) {
        return Err(QError::InvalidArgument(format!("xi needs a positive real part, got {xi}")));
    }
    if !(zeta.re > 0.0) || is_pole(zeta) {
        return Err(QError::InvalidArgument(format!("zeta needs a positive real part, got {zeta}")));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(QError::InvalidArgument(format!("rho must be positive, got {rho}")));
    }
    let limit = check_disk(x, p.eta(), q)?;
    let ln_gamma_zeta = ln_q_gamma(zeta, q)?;
    sum_extended(x, limit, p.eta(), p.kappa(), weight(p), q, trunc, |m| {
        let shift = xi + rho * m as f64;
        Ok(Some(ln_q_gamma(shift, q)? + ln_gamma_zeta - ln_q_gamma(shift + zeta, q)?))
    })
}

/// Closed form of the q-Laplace transform of `u ↦ E^{(σ;c)}_{η,κ}(x u^ρ;q)`:
///
/// `(1/s) Σ_m w_m Γ_q(1+ρm) / Γ_q(ηm+κ) · ((1-q)^ρ x / s^ρ)^m`.
///
/// Requires `Re s > 0` and `|x| / |s|^ρ` inside the convergence disk.
pub fn laplace_closed_form(
    x: Complex64,
    rho: f64,
    s: Complex64,
    p: &ExtendedMLParams,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if !(s.re > 0.0) {
        return Err(QError::InvalidArgument(format!("q-Laplace transform needs Re(s) > 0, got {s}")));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(QError::InvalidArgument(format!("rho must be positive, got {rho}")));
    }
    let s_rho = s.powf(rho);
    let reach = x.norm() / s_rho.norm();
    let radius = convergence_radius(p.eta(), q);
    if reach >= radius {
        return Err(QError::DomainError(format!(
            "|x| / |s|^rho = {reach} is outside the convergence disk of radius {radius}"
        )));
    }
    let w = (1.0 - q.value()).powf(rho) * x / s_rho;
    let r = sum_extended(w, reach / radius, p.eta(), p.kappa(), weight(p), q, trunc, |m| {
        Ok(Some(ln_q_gamma(Complex64::new(1.0 + rho * m as f64, 0.0), q)?))
    })?;
    Ok(r.scaled(1.0 / s))
}
