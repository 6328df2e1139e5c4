//! CLI error type with its process exit-code mapping.
//!
//! Exit codes: 0 success; 1 validation-sweep failure; 2 invalid
//! configuration or I/O problem with the described inputs/outputs;
//! 3 numerical failure (degeneracies, residual bounds, non-convergent
//! series, eigensolver iteration failure).

use qexciton::oracle::OracleError;
use qexciton::response::ResponseError;
use qexciton::spectrum::SpectrumError;

/// Process exit code for success.
pub const EXIT_OK: i32 = 0;
/// Process exit code when validation checks fail.
pub const EXIT_VALIDATION_FAILED: i32 = 1;
/// Process exit code for invalid configs, unknown presets, or I/O errors.
pub const EXIT_INVALID_CONFIG: i32 = 2;
/// Process exit code for numerical failures.
pub const EXIT_NUMERICAL: i32 = 3;

/// A failure carrying the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// The scenario description (config, preset name, paths) is unusable.
    #[error("{0}")]
    Config(String),
    /// The computation failed numerically.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// Convenience constructor for configuration errors.
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Convenience constructor for numerical errors.
    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError::Numerical(msg.into())
    }

    /// The process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_INVALID_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<ResponseError> for CliError {
    fn from(e: ResponseError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match &e {
            OracleError::IterationFailure { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}
