use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("grid size {0} must be a power of two and at least 16")]
    BadGrid(usize),
    #[error("the grid is one-dimensional, operator has dimension {0}")]
    Dimension(usize),
    #[error(
        "coefficient {0} is not 2π-periodic; use the central2 scheme or a windowed comparison"
    )]
    NonPeriodic(String),
    #[error("non-finite value at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },
    #[error("invalid evolution settings: {0}")]
    Settings(String),
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error(transparent)]
    Core(#[from] ggc_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
