use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range [1, {len}]")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("generator must start with a 1 to give a unit diagonal")]
    LeadingZero,

    #[error("matrix is not unit upper triangular: entry ({row}, {col})")]
    NotUnitUpperTriangular { row: usize, col: usize },

    #[error("log2 length {0} is too large")]
    LevelTooLarge(u32),

    #[error("invalid code: {0}")]
    InvalidCode(#[from] crate::code::Violation),

    #[error("reliability sequence: {0}")]
    Sequence(#[from] crate::code::SequenceError),

    #[error("invalid pre-transform: {0}")]
    Recipe(String),

    #[error("dimension {k} exceeds block length {n}")]
    DimensionTooLarge { k: usize, n: usize },

    #[error("mixed pair at position {0}: one member fixed, one free")]
    MixedPair(usize),

    #[error("free bit {free} constrains fixed position {fixed}")]
    ClosureViolated { free: usize, fixed: usize },

    #[error("assignment arity {got} does not match expanded set size {expected}")]
    AssignmentArity { expected: usize, got: usize },

    #[error(
        "expanded set size {lambda} exceeds the limit {limit}; try the equivalence-class optimizer"
    )]
    LambdaLimit { lambda: usize, limit: usize },

    #[error("{what} {value} exceeds the oracle limit {limit}")]
    OracleLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
