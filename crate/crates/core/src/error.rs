use thiserror::Error;

/// Errors are split by who is at fault: the input data (`Malformed`), the
/// mathematics (`Domain`), or this library (`Internal`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{0}")]
    Domain(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("factorization cap exceeded: degree {degree} > {cap}")]
    FactorCap { degree: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) => 2,
            Error::Internal(_) => 3,
            Error::Domain(_) | Error::Dimension(_) | Error::FactorCap { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
