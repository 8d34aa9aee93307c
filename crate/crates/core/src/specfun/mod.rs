//! Special-function kernel.
//!
//! Everything here is a pure function of its inputs. The series routines
//! share [`SeriesControl`] for truncation and report non-convergence as
//! [`PdmError::NonConvergence`](crate::PdmError::NonConvergence).

mod confluent;
mod gamma;
mod heun;
mod hypergeometric;
mod series;

pub use confluent::{
    confluent_heun_eval, confluent_heun_series, CoefficientSeries, ConfluentHeunParams,
    FrobeniusCoefficients, Truncation,
};
pub use gamma::{gamma_fn, sin_pi};
pub use heun::{heun_local, heun_local_derivatives, maier_reduce_21, ArgumentMap, HeunParams};
pub use hypergeometric::{f21_value_at_one, gauss_2f1, gauss_2f1_derivative, F21Params};
pub use series::{is_nonpositive_integer, CompensatedSum, SeriesControl, POLE_TOLERANCE};
