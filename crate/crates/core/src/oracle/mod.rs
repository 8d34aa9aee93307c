//! Independent numerical checks.
//!
//! [`fd_eigensolve`] discretises the `z`-space problem
//! `-φ'' + 𝒱(z) φ = ℰ φ` with second-order central differences and
//! Dirichlet ends; [`ode_residual_x`] substitutes a candidate `ψ(x)` into the
//! scaled `x`-space equation. Neither shares code with the series solvers.

mod fd;
mod residual;
mod tridiag;

pub use fd::{fd_eigensolve, Eigenpair, Grid};
pub use residual::{ode_residual_x, ode_residual_x_analytic, STENCIL_STEP};
pub use tridiag::SymTridiagonal;
