use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("at most 8 variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("exponent does not fit in 16 bits")]
    ExponentOverflow,
    #[error("variable {0} declared twice")]
    DuplicateVariable(String),
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operands live in different rings")]
    MixedRings,
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at column {column}")]
    UnknownVariable { name: String, column: usize },
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not a regular sequence: {0}")]
    NotRegularSequence(String),
    #[error("the ideal is not proper")]
    ImproperIdeal,
    #[error("free module rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("saturation did not stabilize within {0} iterations")]
    SaturationLimit(usize),
    #[error("operation undefined for the zero module")]
    ZeroModule,
    #[error("ambient ring is not flagged equidimensional")]
    NotEquidimensional,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no nonzerodivisor found after {0} random trials")]
    NoNonzerodivisor(usize),
    #[error("data is not monomial: {0}")]
    NotMonomial(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
