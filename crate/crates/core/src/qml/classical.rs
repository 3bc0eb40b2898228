//! Classical (q = 1) Mittag-Leffler functions, used as the limiting reference
//! for the q-analogues.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::ClassicalMLParams;
use crate::error::Result;
use crate::qcore::series::sum_ratio_series;
use crate::qcore::{EvalResult, Truncation};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` for complex `z` (Lanczos, with reflection for `Re z < 1/2`).
///
/// The branch of the logarithm is unspecified; use it through `exp`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// The classical three-parameter series `Σ (σ)_m u^m / (Γ(ηm+κ) m!)`.
///
/// Entire in `u`; the stopping rule only needs the observed term ratio.
pub fn ml_classical(u: Complex64, p: &ClassicalMLParams, trunc: &Truncation) -> Result<EvalResult> {
    let (eta, kappa, sigma) = (p.eta(), p.kappa(), p.sigma());
    if u.norm() == 0.0 {
        return Ok(EvalResult { value: (-ln_gamma(kappa)).exp(), terms_used: 1, tail_estimate: 0.0, converged: true });
    }
    let ln_u = u.ln();
    // (σ)_m / m!
    let mut weight = Complex64::new(1.0, 0.0);
    sum_ratio_series(trunc, 0.0, |m| {
        if m > 0 {
            weight *= (sigma + (m - 1) as f64) / m as f64;
        }
        let ln_mag = ln_u * m as f64 - ln_gamma(eta * m as f64 + kappa);
        Ok(weight * ln_mag.exp())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn ln_gamma_values() {
        assert!((ln_gamma(c(5.0)).exp().re - 24.0).abs() < 1e-12);
        assert!((ln_gamma(c(0.5)).exp().re - PI.sqrt()).abs() < 1e-14);
        // Γ(-0.5) = -2√π via reflection
        assert!((ln_gamma(c(-0.5)).exp() - c(-2.0 * PI.sqrt())).norm() < 1e-13);
        // Γ(1 + i) = 0.498015668 - 0.154949828 i
        let v = ln_gamma(Complex64::new(1.0, 1.0)).exp();
        assert!((v - Complex64::new(0.498_015_668_118_356, -0.154_949_828_301_811)).norm() < 1e-13);
    }

    #[test]
    fn exponential_special_case() {
        let t = Truncation::default();
        let p = ClassicalMLParams::two_parameter(c(1.0), c(1.0)).unwrap();
        let r = ml_classical(c(1.0), &p, &t).unwrap();
        assert!((r.value.re - std::f64::consts::E).abs() < 1e-14);
        let r = ml_classical(c(0.0), &p, &t).unwrap();
        assert_eq!(r.terms_used, 1);
        assert!((r.value.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        let t = Truncation::default();
        // E_{1/2}(1) = e · erfc(-1)
        let p = ClassicalMLParams::two_parameter(c(0.5), c(1.0)).unwrap();
        let v = ml_classical(c(1.0), &p, &t).unwrap().value.re;
        assert!((v - 5.008_980_080_762_283).abs() < 1e-13);
        // E^{0.7}_{1.3,0.9}(0.8), frozen from a 30-digit direct summation
        let p = ClassicalMLParams::new(c(1.3), c(0.9), c(0.7)).unwrap();
        let v = ml_classical(c(0.8), &p, &t).unwrap().value.re;
        assert!((v - 1.575_519_329_531_193_4).abs() < 1e-13);
        // u = 0 gives 1/Γ(κ)
        let v = ml_classical(c(0.0), &p, &t).unwrap().value.re;
        assert!((v - 1.0 / ln_gamma(c(0.9)).exp().re).abs() < 1e-14);
    }
}
