use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Mathematical negatives (a matrix that is simply not a collineation) are
/// returned as `Ok(false)` / `Ok(None)` by the checks; the variants here are
/// for malformed input, violated preconditions, and broken invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("subspaces do not form a direct sum decomposition of the ambient space")]
    NotDirectSum,

    #[error("lattice closure exceeded the node cap of {cap}")]
    NodeCapExceeded { cap: usize },

    #[error("not a collineation of the given family")]
    NotACollineation,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid piecewise-linear data: {0}")]
    InvalidPiecewise(String),

    #[error("p-norm is not rational for coefficient modulus {0}")]
    IrrationalNorm(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
