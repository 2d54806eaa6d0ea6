use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("invalid exponent at position {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("singular point: a denominator vanishes at {0}")]
    SingularPoint(String),
    #[error("chart mismatch")]
    ChartMismatch,
    #[error("coordinate index {index} out of range for a chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("nerve depth exceeded: {0}")]
    NerveDepth(String),
    #[error("holonomy needs a global reduction witness")]
    MissingWitness,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
