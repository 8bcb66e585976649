use thiserror::Error;

/// Errors raised by the geometry kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    /// The caller violated a precondition (wrong dimension, bad parameter,
    /// unsupported operation for this body).
    #[error("usage error: {0}")]
    Usage(String),
    /// A value fell outside the domain of a formula by more than roundoff.
    #[error("domain error: {0}")]
    Domain(String),
    /// The input is geometrically degenerate (coincident points, flat body).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A search finished without producing any admissible result.
    #[error("no result: {0}")]
    NoResult(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

pub(crate) fn usage(msg: impl Into<String>) -> GeomError {
    GeomError::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> GeomError {
    GeomError::Domain(msg.into())
}

pub(crate) fn degenerate(msg: impl Into<String>) -> GeomError {
    GeomError::Degenerate(msg.into())
}
