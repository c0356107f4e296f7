use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension must be between 1 and {max}, got {got}")]
    BadDimension { got: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("provenance unavailable: {0}")]
    NoProvenance(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
