use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("the empty permutation has no skew decomposition")]
    EmptyPermutation,

    #[error("pattern set must contain at least one nonempty pattern")]
    EmptyPatternSet,

    #[error("n = {n} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },

    #[error("block count {ell} is outside 1..={n_max}")]
    BlockCountOutOfRange { ell: usize, n_max: usize },

    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("expected exactly two skew blocks, found {found}")]
    NotTwoBlocks { found: usize },

    #[error("{pattern} is not good")]
    NotGood { pattern: String },

    #[error("{pattern} is not skew indecomposable")]
    NotSkewIndecomposable { pattern: String },

    #[error("permutation must have length at least {min}, found {found}")]
    TooShort { min: usize, found: usize },

    #[error("n = 1 is the strict case: one skew-indecomposable avoider and no two-block avoider")]
    StrictCase,

    #[error("not a counting series: coefficient of z^{index} is negative ({value})")]
    NegativeCoefficient { index: usize, value: String },

    #[error("invalid polynomial: {0}")]
    Polynomial(String),

    #[error("malformed table: {0}")]
    Table(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
