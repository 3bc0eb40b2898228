//! q-gamma and q-beta functions.
//!
//! `Γ_q(z) = (q;q)_∞ / (q^z;q)_∞ · (1-q)^{1-z}` is evaluated as a product of
//! factor ratios `(1 - q^{i+1}) / (1 - q^{z+i})`, accumulated in log form so
//! that neither infinite product is ever formed on its own (for `q` near one
//! both underflow).

use num_complex::Complex64;

use super::params::QBase;
use crate::error::{QError, Result};

/// Factors are dropped once both `q^{i+1}` and `|q^{z+i}|` fall below this.
const FACTOR_TOL: f64 = 1e-17;
/// Factors folded into one logarithm.
const CHUNK: usize = 16;
/// Largest product length attempted (guards `q` absurdly close to one).
const MAX_FACTORS: usize = 50_000_000;

/// Nonpositive integer test used for pole detection.
pub(crate) fn is_pole(z: Complex64) -> bool {
    let r = z.re.round();
    r <= 0.0 && (z - r).norm() < 1e-12
}

/// `ln Γ_q(z)` on some branch of the logarithm; only `exp` of it is meaningful.
pub(crate) fn ln_q_gamma(z: Complex64, q: QBase) -> Result<Complex64> {
    if is_pole(z) {
        return Err(QError::PoleError(z));
    }
    let ln_q = q.ln();
    // need q^{Re z + i} < FACTOR_TOL and q^{i+1} < FACTOR_TOL
    let n = ((FACTOR_TOL.ln() / ln_q) - z.re.min(1.0)).ceil().max(0.0) + 1.0;
    if n > MAX_FACTORS as f64 {
        return Err(QError::NonConvergence { terms: MAX_FACTORS, tail: f64::INFINITY });
    }
    let n = n as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut chunk = Complex64::new(1.0, 0.0);
    for i in 0..n {
        let num = q.one_minus_powf(i as f64 + 1.0);
        let den = q.one_minus_pow(z + i as f64);
        chunk *= num / den;
        if (i + 1) % CHUNK == 0 {
            acc += chunk.ln();
            chunk = Complex64::new(1.0, 0.0);
        }
    }
    acc += chunk.ln();
    Ok(acc + (1.0 - z) * (1.0 - q.value()).ln())
}

/// `ln(1/Γ_q(z))`, or `None` where `1/Γ_q` vanishes (the poles of `Γ_q`).
pub(crate) fn ln_q_rgamma(z: Complex64, q: QBase) -> Result<Option<Complex64>> {
    match ln_q_gamma(z, q) {
        Ok(v) => Ok(Some(-v)),
        Err(QError::PoleError(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn realify(v: Complex64, real_input: bool) -> Complex64 {
    if real_input {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}

/// The q-gamma function `Γ_q(z)`.
///
/// Fails with [`QError::PoleError`] at `z ∈ {0, -1, -2, …}`.
pub fn q_gamma(z: Complex64, q: QBase) -> Result<Complex64> {
    Ok(realify(ln_q_gamma(z, q)?.exp(), z.im == 0.0))
}

/// Reciprocal q-gamma `1/Γ_q(z)`, defined as zero at the poles of `Γ_q`.
pub fn q_rgamma(z: Complex64, q: QBase) -> Result<Complex64> {
    Ok(match ln_q_rgamma(z, q)? {
        Some(v) => realify(v.exp(), z.im == 0.0),
        None => Complex64::new(0.0, 0.0),
    })
}

/// The q-beta function `B_q(a, b) = Γ_q(a) Γ_q(b) / Γ_q(a + b)` for
/// `Re a, Re b > 0`.
pub fn q_beta(a: Complex64, b: Complex64, q: QBase) -> Result<Complex64> {
    if !(a.re > 0.0 && b.re > 0.0) {
        return Err(QError::InvalidArgument(format!(
            "q-beta needs positive real parts, got ({a}, {b})"
        )));
    }
    let ln = ln_q_gamma(a, q)? + ln_q_gamma(b, q)? - ln_q_gamma(a + b, q)?;
    Ok(realify(ln.exp(), a.im == 0.0 && b.im == 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn q(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    #[test]
    fn small_integer_values() {
        for qv in [0.1, 0.5, 0.9] {
            assert!((q_gamma(c(1.0), q(qv)).unwrap() - 1.0).norm() < 1e-14);
            assert!((q_gamma(c(2.0), q(qv)).unwrap() - 1.0).norm() < 1e-14);
        }
        assert!((q_gamma(c(3.0), q(0.5)).unwrap().re - 1.5).abs() < 1e-14);
        // Γ_q(4) = [3]_q [2]_q = 1.75 * 1.5
        assert!((q_gamma(c(4.0), q(0.5)).unwrap().re - 2.625).abs() < 1e-13);
    }

    #[test]
    fn poles_are_reported() {
        for z in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(q_gamma(c(z), q(0.4)), Err(QError::PoleError(_))));
            assert_eq!(q_rgamma(c(z), q(0.4)).unwrap(), c(0.0));
        }
        // close to, but not at, a pole
        assert!(q_gamma(c(-1.0 + 1e-6), q(0.4)).unwrap().re.is_finite());
    }

    #[test]
    fn reference_values() {
        // frozen from a 30-digit evaluation of the product definition
        let v = q_gamma(c(0.5), q(0.5)).unwrap();
        assert!((v.re - 1.572_032_725_786_323_9).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
        let v = q_gamma(Complex64::new(2.7, 0.3), q(0.3)).unwrap();
        assert!((v - Complex64::new(1.179_407_857_202_566_2, 0.102_723_503_427_395_34)).norm() < 1e-14);
        let v = q_gamma(c(-1.5), q(0.6)).unwrap();
        assert!((v.re - 0.773_118_583_287_181_5).abs() < 1e-14);
    }

    #[test]
    fn q_beta_values() {
        assert!((q_beta(c(1.0), c(1.0), q(0.3)).unwrap().re - 1.0).abs() < 1e-14);
        // 1 / Γ_{0.5}(4)
        assert!((q_beta(c(2.0), c(2.0), q(0.5)).unwrap().re - 0.380_952_380_952_381).abs() < 1e-14);
        assert!(q_beta(c(0.0), c(1.0), q(0.3)).is_err());
        assert!(q_beta(c(1.0), Complex64::new(-0.1, 2.0), q(0.3)).is_err());
        let a = Complex64::new(0.7, 0.2);
        let b = Complex64::new(1.9, -0.5);
        let d = q_beta(a, b, q(0.6)).unwrap() - q_beta(b, a, q(0.6)).unwrap();
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn approaches_classical_gamma() {
        // Γ(4.5) = 11.631728...
        let v = q_gamma(c(4.5), q(0.9999)).unwrap().re;
        assert!((v - 11.631_728_396_567_45).abs() / 11.63 < 1e-3);
    }
}
