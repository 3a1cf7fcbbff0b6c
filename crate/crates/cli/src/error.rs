use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("cannot write {0}")]
    Output(String),

    #[error(transparent)]
    Core(#[from] transemi::Error),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for a failed verification or broken internal invariant, 2 for bad
    /// usage or input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Core(transemi::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}
