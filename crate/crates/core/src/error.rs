use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structural function must be real-valued, got {0}")]
    NonRealStructure(String),
    #[error("structure matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("phase-space function must be a polynomial")]
    NotPolynomial,
}

pub type Result<T> = std::result::Result<T, Error>;
