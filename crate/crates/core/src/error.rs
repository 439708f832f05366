use thiserror::Error;

/// Errors raised by the algebra, evaluation and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Frobenius contraction hit an exponent that is not a multiple of p.
    #[error("monomial {monomial} has an exponent not divisible by {p}")]
    NotDivisible { monomial: String, p: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group constraint: {0}")]
    Group(String),

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// An internal consistency check failed. This points at a bug rather than
    /// at bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
