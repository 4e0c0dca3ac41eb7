use taut_core::TautError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Taut(#[from] TautError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 1 for parse and usage errors, 2 for grading and dimension errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Taut(TautError::Grading(_) | TautError::Dimension(_)) => 2,
            _ => 1,
        }
    }
}
