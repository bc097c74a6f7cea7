use thiserror::Error;

/// Errors raised by the geometric and harmonic primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Herglotz measure failed validation.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// A harness call was made with an unknown suite, bad config or bad override.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
