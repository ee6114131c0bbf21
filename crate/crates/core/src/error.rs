use thiserror::Error;

/// Errors raised by path construction, metrics, moduli and diagnostics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid time change: {0}")]
    InvalidTimeChange(String),
    #[error("time {t} outside the domain {domain}")]
    OutOfDomain { t: f64, domain: String },
    #[error("horizon mismatch: {0} vs {1}")]
    HorizonMismatch(f64, f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operation requires a scalar path, got dimension {0}")]
    NotScalar(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("empty input: {0}")]
    Empty(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
