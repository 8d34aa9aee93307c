use thiserror::Error;

pub type Result<T> = std::result::Result<T, PdmError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PdmError {
    #[error("Gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("Fuchsian relation violated: alpha+beta+1 = {lhs}, gamma+delta+epsilon = {rhs}")]
    Fuchsian { lhs: f64, rhs: f64 },

    #[error("invalid branch exponent {exponent}: {reason}")]
    InvalidBranch { exponent: f64, reason: String },

    #[error("series did not converge after {terms} terms (last term magnitude {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    #[error("boundary value did not converge: {0}")]
    BoundaryConvergence(String),

    #[error("could not bracket eigenvalue #{index}: {reason}")]
    BracketFailure { index: usize, reason: String },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("grid too coarse: requested {requested} eigenpairs from {n_points} points")]
    GridTooCoarse { requested: usize, n_points: usize },
}
