use std::f64::consts::PI;

use hyperspherical_grid::{Sinogram, SinogramKind, SphericalGrid};

use crate::RadonError;

/// `d_eps(t, xi) = (2 pi s^2)^(-1/2) exp(-t^2 / (2 s^2))` with
/// `s^2 = eps^2 xi_1^2 + (xi_2^2 + ... + xi_d^2) / eps^2`.
pub fn d_eps(t: f64, xi: &[f64], eps: f64) -> f64 {
    let rest: f64 = xi[1..].iter().map(|x| x * x).sum();
    let var = eps * eps * xi[0] * xi[0] + rest / (eps * eps);
    (-t * t / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

/// Elliptic Gaussian blob on the Radon domain, `(t, xi) -> d_eps(t - xi^T x0, U0 xi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBlob {
    eps: f64,
    x0: Vec<f64>,
    u0: Vec<f64>,
}

pub fn gaussian_blob_sinogram(eps: f64, x0: &[f64], u0: &[f64]) -> Result<GaussianBlob, RadonError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(RadonError::Parameter(format!("eps must lie in (0, 1], got {eps}")));
    }
    let d = x0.len();
    if u0.len() != d * d {
        return Err(RadonError::Dimension { expected: d * d, got: u0.len() });
    }
    for a in 0..d {
        for b in 0..d {
            let dot: f64 = (0..d).map(|k| u0[k * d + a] * u0[k * d + b]).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            if (dot - target).abs() > 1e-12 {
                return Err(RadonError::Parameter("U0 is not orthogonal".into()));
            }
        }
    }
    Ok(GaussianBlob { eps, x0: x0.to_vec(), u0: u0.to_vec() })
}

impl GaussianBlob {
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn eval(&self, t: f64, xi: &[f64]) -> f64 {
        let d = self.x0.len();
        let mut rotated = [0.0; 3];
        for a in 0..d {
            rotated[a] = (0..d).map(|b| self.u0[a * d + b] * xi[b]).sum();
        }
        let shift: f64 = xi.iter().zip(&self.x0).map(|(a, b)| a * b).sum();
        d_eps(t - shift, &rotated[..d], self.eps)
    }

    pub fn sample(&self, grid: &SphericalGrid) -> Result<Sinogram, RadonError> {
        if grid.d() != self.x0.len() {
            return Err(RadonError::Dimension { expected: self.x0.len(), got: grid.d() });
        }
        Ok(Sinogram::from_fn(grid.clone(), SinogramKind::Function, |t, xi| self.eval(t, xi)))
    }
}

/// A proper rotation `U` (row-major) with `U xi = e_1`.
pub fn rotation_to_e1(xi: &[f64]) -> Vec<f64> {
    match xi.len() {
        2 => vec![xi[0], xi[1], -xi[1], xi[0]],
        d => {
            let mut u = vec![0.0; d * d];
            let mut v = xi.to_vec();
            v[0] -= 1.0;
            let vv: f64 = v.iter().map(|x| x * x).sum();
            for a in 0..d {
                for b in 0..d {
                    let id = if a == b { 1.0 } else { 0.0 };
                    u[a * d + b] = if vv > 1e-30 { id - 2.0 * v[a] * v[b] / vv } else { id };
                }
            }
            if vv > 1e-30 {
                // A reflection: flip the last row to restore det = +1.
                for b in 0..d {
                    u[(d - 1) * d + b] = -u[(d - 1) * d + b];
                }
            }
            u
        }
    }
}
