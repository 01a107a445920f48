use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate indices start at 1, got 0")]
    ZeroIndex,

    #[error("duplicate coordinate index {0}")]
    DuplicateIndex(usize),

    #[error("index {index} exceeds the supported maximum {max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("projector must be a non-empty square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("projector is not symmetric (max deviation {0:e})")]
    NotSymmetric(f64),

    #[error("projector is not idempotent (max deviation {0:e})")]
    NotIdempotent(f64),

    #[error("anchor index {index} lies outside the projector block of size {block_dim}")]
    AnchorOutsideBlock { index: usize, block_dim: usize },

    #[error("direction must be a unit vector, |v| = {0}")]
    NonUnitVector(f64),

    #[error("subspace is not contained in the ambient subspace (deviation {0:e})")]
    NotContained(f64),

    #[error("truncation dimension {got} does not cover required index {needed}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("quadrature over {dims} dimensions exceeds the cap of {max}")]
    TooManyQuadratureDims { dims: usize, max: usize },

    #[error("invalid eigenvalue schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
