//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the well model and its numerical machinery.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter or argument was rejected before any computation ran
    /// (non-finite input, wrong sign, unusable grid/quantum-number combination).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The input lies outside the mathematical domain of the requested
    /// quantity (e.g. a coordinate at or beyond the singular walls).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed: non-convergent quadrature, overflowing
    /// intermediate quantities, or a sum that could not be resolved.
    #[error("numerics error: {0}")]
    Numerics(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerics(msg: impl Into<String>) -> Self {
        Error::Numerics(msg.into())
    }
}
