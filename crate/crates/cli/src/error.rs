use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Success = 0,
    Failure = 1,
    Usage = 2,
    Degenerate = 3,
    Verification = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("outcome has probability {0:e}; no conditional state exists")]
    Degenerate(f64),
    #[error("verification failed")]
    Verification,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(cohtele::Error),
}

impl From<cohtele::Error> for CliError {
    fn from(e: cohtele::Error) -> Self {
        match e {
            cohtele::Error::DegenerateOutcome(p) => CliError::Degenerate(p),
            cohtele::Error::InvalidParameter(msg) | cohtele::Error::InvalidState(msg) => {
                CliError::Usage(msg)
            }
            cohtele::Error::MissingN => CliError::Usage(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Degenerate(_) => ExitCode::Degenerate,
            CliError::Verification => ExitCode::Verification,
            _ => ExitCode::Failure,
        }
    }
}
