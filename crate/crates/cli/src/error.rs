use std::fmt;

use pdm_core::PdmError;

/// Exit codes: 1 validation failure, 2 bad configuration, 3 solver failure.
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Solver(_) => EXIT_SOLVER,
        }
    }

    /// Classifies a core error raised while building the configuration.
    pub fn config(err: PdmError) -> Self {
        CliError::Config(err.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Solver(msg) => write!(f, "solver failure: {msg}"),
            CliError::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<PdmError> for CliError {
    fn from(err: PdmError) -> Self {
        match err {
            PdmError::GridTooCoarse { .. } => CliError::Config(err.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(err))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
