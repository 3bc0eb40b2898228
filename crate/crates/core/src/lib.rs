//! Numerics for the extended q-Mittag-Leffler function
//! `E^{(σ;c)}_{η,κ}(u;q)` and the q-calculus toolkit it is built on.
//!
//! The crate is split by layer:
//!
//! - [`qcore`]: scalar primitives (q-numbers, q-shifted factorials, Γ_q, B_q,
//!   q-exponentials) plus the truncation policy shared by every infinite
//!   series and product.
//! - [`qops`]: the q-difference operator, the Jackson integral and the
//!   q-Laplace transform acting on caller-supplied functions.
//! - [`qml`]: the Mittag-Leffler family, from the classical Prabhakar series
//!   to the extended q-function, and the identities it satisfies.
//! - [`kober`]: Kober-type fractional q-integral and q-derivative operators.
//! - [`verify`]: a seeded, randomized identity suite that runs every
//!   identity as a comparison between independent computation paths.
//!
//! All arithmetic is `f64` / [`num_complex::Complex64`].

pub mod error;
pub mod kober;
pub mod qcore;
pub mod qml;
pub mod qops;
pub mod verify;

pub use error::{QError, Result};
pub use num_complex::Complex64 as C64;
pub use qcore::{EvalResult, QBase, Truncation};
