use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("word has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("symbol {symbol} out of range for alphabet size {q}")]
    SymbolOutOfRange { symbol: u8, q: u8 },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("invalid space: q={q}, n={n}")]
    InvalidSpace { q: u8, n: usize },
    #[error("generator set is empty")]
    EmptySet,
    #[error("enumeration of {size} words exceeds guard of {limit}")]
    GuardExceeded { size: u128, limit: u128 },
    #[error("sides overlap")]
    Overlap,
    #[error("duplicate element: {0}")]
    Duplicate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("binary alphabet required, got q={0}")]
    NotBinary(u8),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
