use hyperspherical_grid::{RadialGrid, Sinogram, SinogramKind, SphericalGrid};
use rustfft::num_complex::Complex64;

use crate::{EuclideanField, RadonError};

/// Number of frequency samples used by [`fourier_slice_check`].
const SLICE_SAMPLES: usize = 201;

/// Integral of `f` along the line `xi^T x = t`, sampled at the lattice spacing.
pub fn line_integral(f: &EuclideanField, t: f64, xi: &[f64]) -> f64 {
    let h = f.spacing();
    let reach = (2f64.sqrt() * f.x_max() / h).ceil() as i64 + 2;
    let (c, s) = (xi[0], xi[1]);
    let mut acc = 0.0;
    for k in -reach..=reach {
        let u = k as f64 * h;
        acc += f.value(&[t * c - u * s, t * s + u * c]);
    }
    acc * h
}

/// Numeric Radon transform of a planar field on every grid sample.
pub fn radon_numeric(f: &EuclideanField, grid: &SphericalGrid) -> Result<Sinogram, RadonError> {
    if grid.d() != 2 {
        return Err(RadonError::Dimension { expected: 2, got: grid.d() });
    }
    Ok(Sinogram::from_fn(grid.clone(), SinogramKind::Function, |t, xi| line_integral(f, t, xi)))
}

/// Largest deviation between the 1D Fourier transform of the projection of
/// `f` along `xi0` and the 2D Fourier transform of `f` on the line `w xi0`,
/// for `|w| <= omega_max`, relative to the largest 2D value.
pub fn fourier_slice_check(f: &EuclideanField, xi0: &[f64], omega_max: f64) -> Result<f64, RadonError> {
    if xi0.len() != 2 {
        return Err(RadonError::Dimension { expected: 2, got: xi0.len() });
    }
    let norm = xi0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(RadonError::Parameter(format!("direction norm {norm} is not 1")));
    }
    let h = f.spacing();
    let half = (2f64.sqrt() * f.x_max() / h).ceil() as usize + 1;
    let radial = RadialGrid::new(half as f64 * h, 2 * half + 1)?;
    let ts = radial.samples();
    let projection: Vec<f64> = ts.iter().map(|&t| line_integral(f, t, xi0)).collect();

    let n = f.n();
    let coords: Vec<f64> = (0..n).map(|k| f.coord(k)).collect();
    let nodes: Vec<f64> = (0..n * n).map(|k| f.node(k % n, k / n)).collect();

    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for m in 0..SLICE_SAMPLES {
        let w = omega_max * (2.0 * m as f64 / (SLICE_SAMPLES - 1) as f64 - 1.0);
        let one_d: Complex64 = ts
            .iter()
            .zip(&projection)
            .map(|(&t, &g)| g * Complex64::from_polar(1.0, -w * t))
            .sum::<Complex64>()
            * radial.spacing();
        let ex: Vec<Complex64> = coords.iter().map(|&x| Complex64::from_polar(1.0, -w * xi0[0] * x)).collect();
        let mut two_d = Complex64::new(0.0, 0.0);
        for (iy, &y) in coords.iter().enumerate() {
            let row = &nodes[iy * n..(iy + 1) * n];
            let inner: Complex64 = row.iter().zip(&ex).map(|(&v, &e)| v * e).sum();
            two_d += inner * Complex64::from_polar(1.0, -w * xi0[1] * y);
        }
        two_d *= h * h;
        worst = worst.max((one_d - two_d).norm());
        scale = scale.max(two_d.norm());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

