use hyperspherical_grid::GridError;
use ridge_atoms::RidgeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LearnError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Ridge(#[from] RidgeError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("operation requires d = {expected}, got d = {got}")]
    Dimension { expected: usize, got: usize },
    #[error("CSV line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("solver stopped after {iterations} iterations with KKT residual {residual:.3e}")]
    NotConverged { iterations: usize, residual: f64 },
}
