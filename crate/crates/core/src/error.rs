use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The argument lies outside the region where the series converges.
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("no convergence after {terms} terms (tail estimate {tail:e})")]
    NonConvergence { terms: usize, tail: f64 },
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("q-gamma pole at {0}")]
    PoleError(Complex64),
}

impl QError {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, QError::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, QError>;
