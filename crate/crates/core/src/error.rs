use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("malformed polytope document: {0}")]
    Parse(String),

    #[error("zero vector has no primitive direction")]
    ZeroVector,

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::polytope::MAX_DIMENSION)]
    DimensionLimit(usize),

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("polytope is empty or not full-dimensional")]
    Empty,

    #[error("half-space {0} does not support a facet")]
    Redundant(usize),

    #[error("polytope is not integral")]
    NotIntegral,

    #[error("polytope is not simple")]
    NotSimple,

    #[error("polytope is not Delzant")]
    NotDelzant,

    #[error("enumeration box has {cells} cells, above the guard of {guard}")]
    GuardExceeded { cells: u128, guard: u128 },

    #[error("sample offsets left the combinatorial chamber after {0} retries")]
    ChamberRetriesExhausted(usize),

    #[error("operator truncation {truncation} is below operand degree {degree}")]
    TruncationTooSmall { truncation: usize, degree: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),
}
