use std::fmt;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different quadratic fields: sqrt({left}) vs sqrt({right})")]
    MismatchedRadicand { left: String, right: String },

    #[error("value {0} is rational, expected a quadratic irrational")]
    NotIrrational(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{value} is outside {expected}")]
    OutOfRange { value: String, expected: &'static str },

    #[error("operation needs an exact value, but the continued fraction is a digit stream")]
    UnsupportedStream,

    #[error("invalid partial quotient {0}: quotients after a0 must be positive")]
    InvalidDigit(String),

    #[error("surface S_{{{g},{n}}} has dimension 6g-7+2n < 1")]
    UnsupportedSurface { g: u32, n: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enclosure too wide to certify a floor at step {step}")]
    EnclosureTooWide { step: usize },

    #[error("convergent of an empty product is undefined")]
    EmptyProduct,

    #[error("non-admissible digit sequence: zero denominator after {step} factors")]
    NonAdmissible { step: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("step budget of {0} elementary operations exhausted")]
    BudgetExceeded(u64),

    #[error("exchange matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("mutation direction {direction} outside 1..={rank}")]
    InvalidDirection { direction: usize, rank: usize },

    #[error("run of length {0} does not fit in memory")]
    RunTooLong(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl fmt::Display) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason: reason.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
