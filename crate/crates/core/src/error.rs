use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("quadrature order must be at least 1, got {0}")]
    QuadratureOrder(usize),

    #[error("grid mismatch: {left} cells vs {right} cells")]
    GridMismatch { left: usize, right: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in cell {cell} at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64, cell: usize },

    #[error("no monotone transition within {window} cells of x = {hint}")]
    NoTransition { hint: f64, window: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
