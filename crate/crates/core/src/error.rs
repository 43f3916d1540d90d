use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("point must have at least one coordinate")]
    EmptyPoint,
    #[error("need at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("point {point} lies outside the enclosing ball")]
    NotContained { point: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid transform: {0}")]
    InvalidTransform(String),
    #[error("polynomial evaluated to non-integer {0}")]
    NonIntegral(String),
    #[error("grid too small: half-width {m} over denominator {q} cannot hold radius {k}")]
    GridTooSmall { m: u32, q: u32, k: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
