//! Error types shared by every module.

use thiserror::Error;

/// A syntax error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at line {line}, column {column}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, line: usize, column: usize) -> Self {
        ParseError { message: message.into(), line, column }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("grading error: {0}")]
    Grading(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("ideal has infinite colength")]
    InfiniteColength,
    #[error("genericity failure: {0}")]
    Genericity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, TautError>;
