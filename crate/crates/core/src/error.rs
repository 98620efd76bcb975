//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation's inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Non-finite (NaN/inf) values where finite reals are required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Input is degenerate for the requested operation (e.g. all-zero
    /// distances for a kernel width).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An iterative procedure failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Structured parse error for CSV-like inputs; `line` and `column` are
    /// 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown setting: {0}")]
    UnknownSetting(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
