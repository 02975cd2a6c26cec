use thiserror::Error;

/// Errors raised by constructors and operations. Mathematical check failures
/// are not errors; they come back as a [`crate::report::Verdict`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: String, got: String },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("matrix is singular")]
    Singular,
    /// A hypothesis of an operation fails; `check` names it, `witness` says where.
    #[error("refused: {check} fails at {witness}")]
    Refused { check: String, witness: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved reference: {0}")]
    Reference(String),
    #[error("degree {degree} exceeds the configured ceiling {ceiling}")]
    DegreeCeiling { degree: i64, ceiling: i64 },
}

impl Error {
    pub fn refused(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Refused { check: check.into(), witness: witness.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
