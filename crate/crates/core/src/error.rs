use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{op}: matrix is not square ({rows}x{cols})")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{op}: dimension mismatch ({detail})")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("matrix is singular (det = {det})")]
    Singular { det: String },

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("enumeration cap exceeded: {size} points > cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("negative or non-real probability {value} for configuration {config:#b}")]
    NegativeProbability { config: u64, value: String },

    #[error("level {level}: expected {expected} points, got {got}")]
    WrongCardinality {
        level: usize,
        expected: usize,
        got: usize,
    },

    #[error("divergent product: |{0}| >= 1")]
    Divergent(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("contour: {0}")]
    Contour(String),

    #[error("tail bound {bound:e} exceeds requested tolerance {tol:e}")]
    TailTooLarge { bound: f64, tol: f64 },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
