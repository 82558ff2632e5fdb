use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at q = 0: denominator has zero constant term")]
    PoleAtZero,

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} outside the tabulated range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("ambiguous in source: {0}")]
    AmbiguousInSource(String),

    #[error("no sign change on the search interval")]
    NoSignChange,

    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
