use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] atiyah_core::Error),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: malformed input is 2, anything else 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) => 2,
            CliError::Core(atiyah_core::Error::Infeasible { .. }) => 1,
            CliError::Core(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}
