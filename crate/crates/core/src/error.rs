use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("coordinate {value} out of range for alphabet of size {size}")]
    OutOfRange { value: u64, size: u64 },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("relation `{0}` is not materialized")]
    NotMaterialized(String),

    #[error("relation `{0}` is not affine")]
    NotAffine(String),

    #[error("sandwich not verified: {0}")]
    SandwichNotVerified(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: msg.into(),
    }
}
