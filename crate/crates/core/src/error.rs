use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range for dimension {dim} in {what}")]
    IndexOutOfRange {
        what: String,
        index: usize,
        dim: usize,
    },

    #[error("family {family} requires n >= {min}, got {n}")]
    FamilyTooSmall {
        family: String,
        min: usize,
        n: usize,
    },

    #[error("unknown family {0:?} (expected one of NF, F1, F2, R_NF, R_F1, L1, L2)")]
    UnknownFamily(String),

    #[error("invalid algebra file: {0}")]
    InvalidFile(String),

    #[error("algebra dimension must be at least 1")]
    EmptyAlgebra,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
