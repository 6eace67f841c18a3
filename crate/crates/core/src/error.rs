use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: String, found: String },

    #[error("form is not real")]
    NotReal,

    #[error("g = {g} outside the supported range {min}..={max}")]
    UnsupportedGenus { g: usize, min: usize, max: usize },

    #[error("class is not in the span of the chosen basis")]
    NotInSpan,

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("restart count must be positive")]
    ZeroRestarts,

    #[error("all coefficients are zero")]
    AllZero,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
