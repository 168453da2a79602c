use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("entry {value} at row {row}, column {col} is outside 0..{q}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u64,
        q: u64,
    },
    #[error("entry {value} at row {row}, column {col} is not binary")]
    NotBinary { row: usize, col: usize, value: u32 },
    #[error("invalid families metadata: {0}")]
    InvalidFamilies(String),
    #[error("matrix carries no families metadata")]
    MissingFamilies,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("alphabet is not one-sided")]
    NotOneSided,
    #[error("alphabet is one-sided; a two-sided alphabet is required")]
    NotTwoSided,
    #[error("no consistent vector: {0}")]
    NoConsistentVector(String),
    #[error("work estimate {required} exceeds budget {budget} (use force to override)")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
