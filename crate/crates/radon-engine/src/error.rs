use hyperspherical_grid::GridError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RadonError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("operation requires d = {expected}, got d = {got}")]
    Dimension { expected: usize, got: usize },
    #[error("point {point:?} projects to t = {t} outside [-{t_max}, {t_max}] along direction {dir}")]
    OutOfRange { point: Vec<f64>, t: f64, t_max: f64, dir: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("spectrum is not even: asymmetry {0:.3e}")]
    NotEven(f64),
    #[error("duplicate atoms at t = {t}, xi = {xi:?}")]
    DuplicateAtom { t: f64, xi: Vec<f64> },
}
