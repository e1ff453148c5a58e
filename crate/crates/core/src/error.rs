use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must be odd and at least 3, got {0}")]
    InvalidModulus(u64),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("index set must contain at least one index")]
    EmptyIndexSet,

    #[error("entry {value} out of range 1..={max}")]
    EntryOutOfRange { value: u64, max: u64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("enumeration of {requested} items exceeds budget {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range for {len} indices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
