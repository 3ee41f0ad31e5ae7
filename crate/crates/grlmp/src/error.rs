//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by operation algebra, distribution evaluation,
/// sampling, decomposition and estimation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the domain required by the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A combined value would leave the interval on which the operation
    /// is closed.
    #[error("range error: {0}")]
    Range(String),

    /// Input data carry no information (empty, too small, or constant).
    #[error("degenerate data: {0}")]
    Degenerate(String),

    /// A quadrature result failed to meet the requested tolerance.
    #[error("quadrature tolerance not met: {0}")]
    Quadrature(String),

    /// A constructor argument violates a parameter constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
