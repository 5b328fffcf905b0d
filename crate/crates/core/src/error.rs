use thiserror::Error;

/// Errors raised by the summability toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("diagonal entry at row {0} is zero")]
    ZeroDiagonal(usize),

    #[error("row {row} has {found} entries, expected {expected}")]
    ShapeMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("sequence has length {found}, expected at least {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix sizes differ or are too small: {0}")]
    SizeMismatch(String),

    #[error("exponent k = {0} is invalid, k must be a finite real >= 1")]
    BadExponent(f64),

    #[error("weight p_{index} = {value} is not positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("tail sum needs index {needed} but only {available} entries are available")]
    TailUnavailable { needed: usize, available: usize },

    #[error("invalid tail spec: {0}")]
    BadTail(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("probe at v = {0} has zero X-norm")]
    DegenerateProbe(usize),

    #[error("lambda_{0} vanishes while the numerator of the ratio does not")]
    DivisionByZero(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
