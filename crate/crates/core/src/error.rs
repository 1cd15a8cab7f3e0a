use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {0} is too small (need at least 2)")]
    DegreeTooSmall(usize),
    #[error("degree {0} is outside the supported range {1}..={2}")]
    UnsupportedDegree(usize, usize, usize),
    #[error("could not parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefree(u64),
    #[error("root isolation precision exhausted after {0} bits")]
    PrecisionExhausted(u32),
    #[error("input is outside the range of the factor search: {0}")]
    OutsideOracleRange(String),
    #[error("coefficient too large for exact small-degree classification")]
    CoefficientTooLarge,
    #[error("enumeration of {size} points exceeds the ceiling {ceiling}")]
    EnumerationTooLarge { size: u128, ceiling: u128 },
    #[error("at least two data points with positive counts are required, got {0}")]
    InsufficientData(usize),
    #[error("line is degenerate: both d1 and d2 are zero")]
    DegenerateLine,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
