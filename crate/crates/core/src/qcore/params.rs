use num_complex::Complex64;

use crate::error::{QError, Result};

/// The deformation parameter `q`, restricted to the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase {
    q: f64,
    ln_q: f64,
}

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::InvalidArgument(format!(
                "q must lie strictly between 0 and 1, got {q}"
            )));
        }
        Ok(Self { q, ln_q: q.ln() })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn ln(&self) -> f64 {
        self.ln_q
    }

    /// `q^z` on the principal branch.
    #[inline]
    pub fn pow(&self, z: Complex64) -> Complex64 {
        (z * self.ln_q).exp()
    }

    /// `q^x` for real `x`.
    #[inline]
    pub fn powf(&self, x: f64) -> f64 {
        (x * self.ln_q).exp()
    }

    /// `1 - q^z`, accurate when `q^z` is close to one.
    pub fn one_minus_pow(&self, z: Complex64) -> Complex64 {
        let w = z * self.ln_q;
        let half = (0.5 * w.im).sin();
        // exp(w) - 1 = expm1(a) cos b - 2 sin^2(b/2) + i e^a sin b
        let re = w.re.exp_m1() * w.im.cos() - 2.0 * half * half;
        let im = w.re.exp() * w.im.sin();
        Complex64::new(-re, -im)
    }

    /// `1 - q^x` for real `x`.
    #[inline]
    pub fn one_minus_powf(&self, x: f64) -> f64 {
        -(x * self.ln_q).exp_m1()
    }
}

/// Truncation policy for every infinite series, product and q-integral.
///
/// A sum stops once its tail estimate drops below
/// `max(abs_tol, rel_tol * |partial sum|)`; running out of `max_terms`
/// first is reported as [`QError::NonConvergence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    abs_tol: f64,
    rel_tol: f64,
    max_terms: usize,
}

impl Truncation {
    pub fn new(abs_tol: f64, rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(QError::InvalidArgument(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(QError::InvalidArgument(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if max_terms < 1 {
            return Err(QError::InvalidArgument("max_terms must be at least 1".into()));
        }
        Ok(Self { abs_tol, rel_tol, max_terms })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Tail tolerance in force for a partial sum of magnitude `scale`.
    #[inline]
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale)
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-14, max_terms: 10_000 }
    }
}

/// A truncated evaluation together with its convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl EvalResult {
    /// A value obtained in closed form, with no truncation involved.
    pub fn exact(value: Complex64) -> Self {
        Self { value, terms_used: 0, tail_estimate: 0.0, converged: true }
    }

    pub(crate) fn scaled(self, factor: Complex64) -> Self {
        Self {
            value: self.value * factor,
            tail_estimate: self.tail_estimate * factor.norm(),
            ..self
        }
    }
}
