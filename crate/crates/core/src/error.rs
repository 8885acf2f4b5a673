use thiserror::Error;

/// Errors produced by construction, analysis and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid frequency vector: {0}")]
    InvalidFrequency(String),

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("column index {index} is outside [1, {factors}]")]
    InvalidColumn { index: usize, factors: usize },

    #[error("column {0} is listed more than once")]
    DuplicateColumn(usize),

    #[error("column subset is empty")]
    EmptySubset,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("word type {0} is not all ones")]
    NotAllOnes(String),

    #[error("complete word: aliasing index is 1 for all-even word type {0}")]
    CompleteWord(String),

    #[error("resource guard: {what} needs an estimated {estimate:.3e}, limit {limit:.3e} (pass the force flag to override)")]
    Budget {
        what: &'static str,
        estimate: f64,
        limit: f64,
    },

    #[error("precondition failed: {0}; use the brute-force method instead")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("aliasing index {num}/{den} is not a power of two")]
    NonDyadic { num: u64, den: u64 },

    #[error("word count 2^{0} does not fit in 128 bits")]
    CountOverflow(u32),

    #[error("theory and brute-force spectra differ: {0}")]
    Mismatch(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
