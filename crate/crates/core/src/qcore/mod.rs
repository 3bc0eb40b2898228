//! Scalar q-calculus primitives.
//!
//! Everything here works in double-precision complex arithmetic. Complex
//! powers of the base are taken on the principal branch, `q^z = exp(z ln q)`
//! with `ln q` real.

mod exponential;
mod gamma;
mod params;
mod pochhammer;
pub(crate) mod series;

pub use exponential::{q_exponential, ExpKind};
pub use gamma::{q_beta, q_gamma, q_rgamma};
pub(crate) use gamma::{is_pole, ln_q_gamma, ln_q_rgamma};
pub use params::{EvalResult, QBase, Truncation};
pub use pochhammer::{q_binomial, q_number, q_pochhammer, q_power_difference, Exponent, Order};
pub(crate) use pochhammer::{pochhammer_inf, pochhammer_ratio};
