//! Eigenvalues and eigenstates for the solvable cases.
//!
//! * `V = 0`: terminating hypergeometric states with `ℰ = n(n+1)`.
//! * `sinh²` with the box constant: `𝒱(z) ≡ 0`, so `ℰ = k²`.
//! * `tanh`: roots of a boundary function built from confluent Heun series.
//!
//! Every state is normalised in `L²(dx)`.

mod free;
mod sinh2;
mod state;
mod tanh;

pub use free::{
    v0_boundary_params, v0_eigenstate, v0_eigenstates, v0_eigenvalue, v0_existence_check,
    v0_heun_form, v0_heun_params, v0_pole_quantity, v0_wavefunction, v0_wavefunction_z,
};
pub use sinh2::{sinh2_eigenstates, sinh2_naive_form_report, NaiveFormCheck};
pub use state::{asymmetry, count_nodes, inner_product, Eigenstate, Parity, HALF_WIDTH};
pub use tanh::{
    tanh_boundary_function, tanh_boundary_partial_sums, tanh_eigenstate_at, tanh_eigenstates, tanh_eigenvalues,
    tanh_eigenvalues_with, tanh_wavefunction, BoundaryCrossCheck, TanhState, WavefunctionSample,
    MAX_TANH_COUNT, MAX_TANH_V0,
};
