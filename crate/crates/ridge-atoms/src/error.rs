use hyperspherical_grid::GridError;
use poly_calculus::PolyError;
use radon_engine::RadonError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RidgeError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Radon(#[from] RadonError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("operation requires d = {expected}, got d = {got}")]
    Dimension { expected: usize, got: usize },
    #[error("direction {xi:?} is {distance:.3e} away from the nearest grid direction")]
    OffGrid { xi: Vec<f64>, distance: f64 },
    #[error("sinogram has an odd component of relative size {0:.3e}")]
    OddPart(f64),
    #[error("malformed network: {0}")]
    Format(String),
}

pub(crate) fn check_unit(xi: &[f64]) -> Result<(), RidgeError> {
    let n = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (n - 1.0).abs() > 1e-12 {
        return Err(RidgeError::Parameter(format!("direction {xi:?} has norm {n}, not 1")));
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
