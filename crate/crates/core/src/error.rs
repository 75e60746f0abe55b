use thiserror::Error;

/// Errors raised by the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (zero where a unit
    /// is required, a degenerate form, a non-prime modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// The operation is only defined for a restricted set of parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal consistency check failed. Indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
