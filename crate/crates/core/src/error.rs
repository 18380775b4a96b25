use thiserror::Error;

/// Errors raised by the library.
///
/// Indices carried in error values are 1-based, matching the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("matrix is not skew-symmetrizable: entries ({i},{j}) and ({j},{i}) are incompatible")]
    NotSkewSymmetrizable { i: usize, j: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not divisible: no Laurent polynomial quotient exists")]
    NotDivisible,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("restriction not allowed: b_{i}{k} is nonzero with {i} outside the index set")]
    RestrictionViolation { i: usize, k: usize },

    #[error("finite type; no witness (bc = {0})")]
    NoWitness(u64),

    #[error("not admissible: {0}")]
    NotAdmissible(crate::folding::Violation),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
