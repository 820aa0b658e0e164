use hyperspherical_grid::GridError;
use radon_engine::RadonError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Radon(#[from] RadonError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("radius {r} exceeds the window cache extent {r_max}")]
    Extent { r: f64, r_max: f64 },
    #[error("multi-index of order {order} exceeds the supported order {max}")]
    Order { order: usize, max: usize },
    #[error("quadrature tail holds {fraction:.3e} of the integrand mass")]
    TailMass { fraction: f64 },
    #[error("operation requires d = {expected}, got d = {got}")]
    Dimension { expected: usize, got: usize },
    #[error("Gram matrix of the dual basis is singular")]
    Singular,
    #[error("malformed coefficients: {0}")]
    Format(String),
}
