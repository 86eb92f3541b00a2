use thiserror::Error;

/// A failed command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Verification failed, the service refused, or the operation could not
    /// complete. Exit code 1.
    #[error("{0}")]
    Failed(String),
    /// Bad flags or unreadable inputs. Exit code 2.
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<bpk_core::Error> for CliError {
    fn from(e: bpk_core::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
