use thiserror::Error;

/// Failure modes shared by every engine layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic outside its domain (inverting zero, non-prime characteristic).
    #[error("domain error: {0}")]
    Domain(String),
    /// Shape mismatch: wrong variable count, incompatible matrices, d^2 != 0.
    #[error("structural error: {0}")]
    Structural(String),
    /// Exponent or index overflow.
    #[error("overflow: {0}")]
    Overflow(String),
    /// A configured resource ceiling was hit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An operation's precondition does not hold for its input.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The ideal contains 1.
    #[error("the quotient ring is the zero ring")]
    ZeroRing,
    /// Malformed text input; `offset` is a byte offset into the parsed string.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// Two independent computations disagreed, or a theorem check failed.
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
