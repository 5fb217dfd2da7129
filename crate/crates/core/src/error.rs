use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("negative part or entry: {0}")]
    Negative(f64),
    #[error("depth {depth} exceeds the allowed number of rows {n}")]
    DepthExceeded { depth: usize, n: usize },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("spectrum is not sorted in descending order")]
    NotDescending,
    #[error("trace condition violated: {0}")]
    TraceMismatch(String),
    #[error("trace must be positive")]
    ZeroTrace,
    #[error("tensor dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: u128, cap: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not Hermitian positive semidefinite: {0}")]
    NotPositive(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
