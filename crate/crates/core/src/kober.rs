//! Kober-type fractional q-integral and q-derivative operators.
//!
//! The integral operator
//!
//! `I_q^{ν,μ} f(u) = u^{-ν-μ}/Γ_q(μ) ∫_0^u (u - tq)^{(μ-1)} t^ν f(t) d_q t`
//!
//! is available by quadrature. Both operators act on power series termwise,
//! sending `u^m` to a gamma-ratio multiple of itself.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::qcore::{ln_q_gamma, pochhammer_ratio, q_gamma, EvalResult, QBase, Truncation};
use crate::qml::{check_disk, sum_extended, ExtendedMLParams, Weight};
use crate::qops::{jackson_integral, ScalarFunction, TryFn};

/// The operator pair `(ν, μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KoberParams {
    nu: Complex64,
    mu: Complex64,
}

impl KoberParams {
    pub fn new(nu: Complex64, mu: Complex64) -> Result<Self> {
        if !(nu.re.is_finite() && nu.im.is_finite() && mu.re.is_finite() && mu.im.is_finite()) {
            return Err(QError::InvalidArgument("Kober parameters must be finite".into()));
        }
        Ok(Self { nu, mu })
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }
}

/// Which operator a termwise image refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageKind {
    Integral,
    Derivative,
}

impl ImageKind {
    fn sign(self) -> f64 {
        match self {
            ImageKind::Integral => 1.0,
            ImageKind::Derivative => -1.0,
        }
    }
}

/// `ln Γ_q(ν+m+1) - ln Γ_q(ν+μ+m+1)`, failing at poles of either factor.
fn ln_image(m: usize, k: &KoberParams, q: QBase) -> Result<Complex64> {
    let a = k.nu + (m as f64 + 1.0);
    Ok(ln_q_gamma(a, q)? - ln_q_gamma(a + k.mu, q)?)
}

/// Quadrature evaluation of `I_q^{ν,μ} f(u)` for real `u > 0`.
pub fn kober_integral_direct<F: ScalarFunction + ?Sized>(
    f: &F,
    u: f64,
    k: &KoberParams,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if !(k.mu.re > 0.0) {
        return Err(QError::InvalidArgument(format!("Kober integral needs Re(mu) > 0, got {}", k.mu)));
    }
    if !(u > 0.0 && u.is_finite()) {
        return Err(QError::InvalidArgument(format!("Kober integral needs u > 0, got {u}")));
    }
    let (nu, mu) = (k.nu, k.mu);
    let qv = q.value();
    let uc = Complex64::new(u, 0.0);
    // (u - tq)^{(μ-1)} = u^{μ-1} (tq/u;q)_{μ-1}
    let integrand = TryFn(|t: Complex64| {
        if t.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let kernel = pochhammer_ratio(t * qv / u, mu - 1.0, q)?;
        Ok(kernel * t.powc(nu) * f.eval(t)?)
    });
    let r = jackson_integral(&integrand, u, q, trunc)?;
    Ok(r.scaled(uc.powc(-nu - 1.0) / q_gamma(mu, q)?))
}

/// Coefficient multiplying `u^m` in the image of `u^m`: the ratio
/// `Γ_q(ν+m+1)/Γ_q(ν+μ+m+1)` for the integral, its reciprocal for the
/// derivative.
pub fn kober_image_power(m: u32, k: &KoberParams, q: QBase, kind: ImageKind) -> Result<Complex64> {
    let v = (kind.sign() * ln_image(m as usize, k, q)?).exp();
    Ok(if k.nu.im == 0.0 && k.mu.im == 0.0 { Complex64::new(v.re, 0.0) } else { v })
}

/// Applies an operator to the finite power series `Σ coeffs[m] u^m`, returning
/// the coefficients of the image.
pub fn kober_image_series(coeffs: &[Complex64], k: &KoberParams, q: QBase, kind: ImageKind) -> Result<Vec<Complex64>> {
    coeffs
        .iter()
        .enumerate()
        .map(|(m, &a)| Ok(a * kober_image_power(m as u32, k, q, kind)?))
        .collect()
}

fn image_extended(
    u: Complex64,
    p: &ExtendedMLParams,
    k: &KoberParams,
    q: QBase,
    trunc: &Truncation,
    kind: ImageKind,
) -> Result<EvalResult> {
    let limit = check_disk(u, p.eta(), q)?;
    let weight = Weight::Extended { sigma: p.sigma(), c: p.c() };
    sum_extended(u, limit, p.eta(), p.kappa(), weight, q, trunc, |m| {
        Ok(Some(kind.sign() * ln_image(m, k, q)?))
    })
}

/// `I_q^{ν,μ}` applied termwise to `E^{(σ;c)}_{η,κ}(u;q)`.
pub fn kober_i_extended(
    u: Complex64,
    p: &ExtendedMLParams,
    k: &KoberParams,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    image_extended(u, p, k, q, trunc, ImageKind::Integral)
}

/// `D_q^{ν,μ}` applied termwise to `E^{(σ;c)}_{η,κ}(u;q)`.
pub fn kober_d_extended(
    u: Complex64,
    p: &ExtendedMLParams,
    k: &KoberParams,
    q: QBase,
    trunc: &Truncation,
) -> Result<EvalResult> {
    image_extended(u, p, k, q, trunc, ImageKind::Derivative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::q_rgamma;
    use crate::qml::q_ml_extended;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn q(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    #[test]
    fn image_power_values() {
        let k = KoberParams::new(c(0.0), c(1.0)).unwrap();
        let v = kober_image_power(1, &k, q(0.5), ImageKind::Integral).unwrap();
        assert!((v - 1.0 / 1.5).norm() < 1e-15);
        let k0 = KoberParams::new(c(0.3), c(0.0)).unwrap();
        assert!((kober_image_power(4, &k0, q(0.5), ImageKind::Integral).unwrap() - 1.0).norm() < 1e-15);
        let kp = KoberParams::new(c(-2.0), c(0.5)).unwrap();
        assert!(matches!(
            kober_image_power(1, &kp, q(0.5), ImageKind::Integral),
            Err(QError::PoleError(_))
        ));
    }

    #[test]
    fn image_kinds_are_reciprocal() {
        let k = KoberParams::new(Complex64::new(0.4, 0.2), Complex64::new(1.3, -0.1)).unwrap();
        for m in 0..8 {
            let a = kober_image_power(m, &k, q(0.6), ImageKind::Integral).unwrap();
            let b = kober_image_power(m, &k, q(0.6), ImageKind::Derivative).unwrap();
            assert!((a * b - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn quadrature_on_monomials() {
        let t = Truncation::default();
        let b = q(0.55);
        let k = KoberParams::new(c(0.7), Complex64::new(1.4, 0.3)).unwrap();
        let u = 0.8;
        for m in 0..=5 {
            let f = move |x: Complex64| x.powi(m);
            let r = kober_integral_direct(&f, u, &k, b, &t).unwrap();
            let expect = kober_image_power(m as u32, &k, b, ImageKind::Integral).unwrap() * u.powi(m);
            assert!((r.value - expect).norm() < 1e-10, "m = {m}");
        }
        let zero = |_: Complex64| c(0.0);
        assert_eq!(kober_integral_direct(&zero, u, &k, b, &t).unwrap().value, c(0.0));
        let bad = KoberParams::new(c(0.1), c(0.0)).unwrap();
        assert!(kober_integral_direct(&zero, u, &bad, b, &t).is_err());
    }

    #[test]
    fn extended_at_origin() {
        let t = Truncation::default();
        let b = q(0.5);
        let p = ExtendedMLParams::new(1.2, c(0.9), c(0.3), c(1.4)).unwrap();
        let k = KoberParams::new(c(0.5), c(0.8)).unwrap();
        let g = q_gamma(c(1.5), b).unwrap() / q_gamma(c(2.3), b).unwrap() * q_rgamma(c(0.9), b).unwrap();
        assert!((kober_i_extended(c(0.0), &p, &k, b, &t).unwrap().value - g).norm() < 1e-14);
        let d = kober_d_extended(c(0.0), &p, &k, b, &t).unwrap().value;
        assert!((d - q_rgamma(c(0.9), b).unwrap().powi(2) / g).norm() < 1e-13);
    }

    #[test]
    fn derivative_after_integral_is_identity() {
        let t = Truncation::default();
        let b = q(0.4);
        let p = ExtendedMLParams::new(1.1, c(1.3), c(0.6), c(1.9)).unwrap();
        let k = KoberParams::new(c(0.2), c(0.9)).unwrap();
        let coeffs = crate::qml::SeriesEvaluator::extended(&p, b, 1.0, &t).unwrap().coefficients().to_vec();
        let img = kober_image_series(&coeffs, &k, b, ImageKind::Integral).unwrap();
        let back = kober_image_series(&img, &k, b, ImageKind::Derivative).unwrap();
        for (a, z) in coeffs.iter().zip(&back) {
            assert!((a - z).norm() <= 1e-13 * a.norm().max(1e-300));
        }
        let u = Complex64::new(0.5, 0.2);
        let i = kober_i_extended(u, &p, &k, b, &t).unwrap();
        assert!(i.converged);
        assert!(q_ml_extended(u, &p, b, &t).unwrap().converged);
    }
}
