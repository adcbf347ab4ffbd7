use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] confpair_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    /// Missing or contradictory arguments.
    #[error("{0}")]
    Usage(String),
    /// A property check ran and failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for malformed input, 2 for well-formed but invalid input or
    /// environment failures, 3 for failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_syntax() => 1,
            CliError::Json(e) if e.is_syntax() || e.is_eof() => 1,
            CliError::Verification(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
