use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("unsupported dimension d = {0} (expected 2 or 3)")]
    Dimension(usize),
    #[error("invalid direction count n = {n} for d = {d}: {reason}")]
    DirectionCount { d: usize, n: usize, reason: &'static str },
    #[error("invalid radial grid: {0}")]
    Radial(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("antipodal mismatch {mismatch:.3e} exceeds tolerance {tol:.3e}")]
    Antipode { mismatch: f64, tol: f64 },
    #[error("malformed sinogram file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
