use num_complex::Complex64;

use crate::error::{QError, Result};

/// Parameters `(η, κ, σ, c)` of the extended q-Mittag-Leffler function.
///
/// `η` is real and positive, `Re κ > 0` and `Re c > Re σ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedMLParams {
    eta: f64,
    kappa: Complex64,
    sigma: Complex64,
    c: Complex64,
}

impl ExtendedMLParams {
    pub fn new(eta: f64, kappa: Complex64, sigma: Complex64, c: Complex64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(QError::InvalidArgument(format!("eta must be real and positive, got {eta}")));
        }
        if !(kappa.re > 0.0) {
            return Err(QError::InvalidArgument(format!("kappa needs a positive real part, got {kappa}")));
        }
        if !(sigma.re > 0.0) {
            return Err(QError::InvalidArgument(format!("sigma needs a positive real part, got {sigma}")));
        }
        if !(c.re > sigma.re) {
            return Err(QError::InvalidArgument(format!("need Re(c) > Re(sigma), got c = {c}, sigma = {sigma}")));
        }
        Ok(Self { eta, kappa, sigma, c })
    }

    /// Like [`ExtendedMLParams::new`] but takes a complex `η`, rejecting a
    /// nonzero imaginary part.
    pub fn from_complex_eta(eta: Complex64, kappa: Complex64, sigma: Complex64, c: Complex64) -> Result<Self> {
        if eta.im != 0.0 {
            return Err(QError::InvalidArgument(format!("eta must be real, got {eta}")));
        }
        Self::new(eta.re, kappa, sigma, c)
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn with_kappa(self, kappa: Complex64) -> Result<Self> {
        Self::new(self.eta, kappa, self.sigma, self.c)
    }

    pub fn with_sigma_c(self, sigma: Complex64, c: Complex64) -> Result<Self> {
        Self::new(self.eta, self.kappa, sigma, c)
    }
}

/// Parameters of the classical three-parameter (Prabhakar) function; `σ = 1`
/// gives the two-parameter function and `σ = κ = 1` the one-parameter one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalMLParams {
    eta: Complex64,
    kappa: Complex64,
    sigma: Complex64,
}

impl ClassicalMLParams {
    pub fn new(eta: Complex64, kappa: Complex64, sigma: Complex64) -> Result<Self> {
        for (name, v) in [("eta", eta), ("kappa", kappa), ("sigma", sigma)] {
            if !(v.re > 0.0) {
                return Err(QError::InvalidArgument(format!("{name} needs a positive real part, got {v}")));
            }
        }
        Ok(Self { eta, kappa, sigma })
    }

    pub fn two_parameter(eta: Complex64, kappa: Complex64) -> Result<Self> {
        Self::new(eta, kappa, Complex64::new(1.0, 0.0))
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }
}
