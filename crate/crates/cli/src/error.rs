use parry_attractors::{ParryError, VerifyError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Parry(#[from] ParryError),

    #[error(transparent)]
    Verify(#[from] VerifyError),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl CliError {
    /// 2 bad input, 3 resource cap, 4 unmet precondition, 5 self-check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Parry(e) => match e {
                ParryError::CapExceeded { .. } | ParryError::ScanLimit { .. } => 3,
                ParryError::LevelTooSmall { .. } | ParryError::PreconditionUnmet(_) => 4,
                ParryError::Internal(_) => 5,
                _ => 2,
            },
            CliError::Verify(e) => match e {
                VerifyError::CapExceeded { .. } => 3,
                VerifyError::Precondition(_) => 4,
                _ => 2,
            },
            CliError::SelfCheck(_) => 5,
        }
    }
}
