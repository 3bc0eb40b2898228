//! The Mittag-Leffler family and its q-analogues.
//!
//! [`q_ml_extended`] is the two-upper-parameter function
//!
//! ```text
//! E^{(σ;c)}_{η,κ}(u;q) = Σ_m  B_q(σ+m, c-σ) / B_q(σ, c-σ) · (q^c;q)_m / (q;q)_m · u^m / Γ_q(ηm+κ)
//! ```
//!
//! which converges absolutely for `|u| < (1-q)^{-η}`. The other entry points
//! are its special cases and the closed forms of the transforms applied to it.

mod classical;
mod family;
mod params;
mod theorems;

pub use classical::{ln_gamma, ml_classical};
pub use family::{
    beta_ratio, convergence_radius, q_mittag_leffler, q_ml_extended, q_ml_prabhakar, series_term_ratio,
    SeriesEvaluator,
};
pub(crate) use family::{check_disk, sum_extended, Weight};
pub use params::{ClassicalMLParams, ExtendedMLParams};
pub use theorems::{
    beta_weighted_integral, derivative_closed_form, integral_representation, laplace_closed_form, recurrence_rhs,
};
