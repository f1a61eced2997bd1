use eigenid_core::Error as CoreError;
use thiserror::Error;

/// Command failure, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable file or malformed JSON (exit 2).
    #[error("parse error: {0}")]
    Parse(String),
    /// Input that parses but is not a valid Hermitian matrix, bad flags, or
    /// a failed verification check (exit 1).
    #[error("validation error: {0}")]
    Validation(String),
    /// An iterative solver hit its cap (exit 3).
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// The selected method does not apply to this input (exit 4).
    #[error("method precondition failed: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Parse(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::NoConvergence { .. } => CliError::NonConvergence(msg),
            CoreError::DegenerateEigenvalue { .. }
            | CoreError::DegenerateSpectrum
            | CoreError::SingularShift { .. }
            | CoreError::IllConditioned { .. }
            | CoreError::InterlacingViolation { .. }
            | CoreError::ProbeTooCloseToPole { .. }
            | CoreError::NoZeroEigenvalue { .. }
            | CoreError::NotReal => CliError::Precondition(msg),
            _ => CliError::Validation(msg),
        }
    }
}
