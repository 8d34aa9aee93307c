//! Bound-state spectra of the one-dimensional Schrödinger equation for a
//! particle whose mass follows the solitonic profile `m(x) = m0 sech²(a x)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Gamma, Gauss ₂F₁, local Heun and confluent-Heun Frobenius
//!   series, and the quadratic Heun → ₂F₁ reduction.
//! - [`masstransform`]: the mass profile, the `x ↔ z` Gudermannian map,
//!   energy scaling and the effective confining potential in `z`.
//! - [`ordering`]: von Roos kinetic orderings and their kinematic potential.
//! - [`spectra`]: analytic and series-based eigenstates for the free,
//!   `sinh²` and `tanh` external potentials.
//! - [`oracle`]: an independent finite-difference eigensolver and ODE
//!   residual checks used to validate everything above.

// Guards are written as `!(x < bound)` so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod masstransform;
pub mod oracle;
pub mod ordering;
pub mod quad;
pub mod specfun;
pub mod spectra;

pub use error::{PdmError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
