use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different ring contexts")]
    ContextMismatch,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid ring context: {0}")]
    InvalidContext(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("the projection forgetting the last target coordinate is not finite (infinite quotient dimension)")]
    NotFinite,

    #[error("degree cap exceeded: row {row} has no solution up to degree {last_degree}")]
    DegreeCapExceeded { row: usize, last_degree: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
