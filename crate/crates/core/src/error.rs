use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {0} is not a positive integer")]
    InvalidIndex(usize),

    #[error("index {0} appears more than once")]
    DuplicateIndex(usize),

    #[error("coordinate at index {index} is not finite: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("negative entry {value} at position {position}")]
    NegativeEntry { position: usize, value: f64 },

    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),

    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("bisection bracket is invalid: {0}")]
    Bracket(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("support of size {size} exceeds the limit of {limit}")]
    SupportTooLarge { size: usize, limit: usize },

    #[error("unknown engine `{0}`")]
    UnknownEngine(String),

    #[error("engine `{engine}` lacks the required flags: {required}")]
    FlagsUnmet { engine: String, required: String },

    #[error("construction precondition unmet: {0}")]
    Precondition(String),

    #[error("invalid Orlicz function: {0}")]
    InvalidOrlicz(String),

    #[error("invalid exponent sequence: {0}")]
    InvalidExponents(String),

    #[error("invalid block weights: {0}")]
    InvalidBlocks(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
