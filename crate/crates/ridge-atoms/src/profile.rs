use std::f64::consts::PI;

use hyperspherical_grid::{Sinogram, SinogramKind, SphericalGrid};
use radon_engine::{line_integral, EuclideanField};

use crate::error::{check_unit, dot};
use crate::RidgeError;

/// Snap tolerance for [`ridge_filtered_radon`] without snapping.
const ON_GRID: f64 = 1e-9;

/// One-dimensional ridge profile `r(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `max(t, 0)`.
    Relu,
    /// `|t| / 2`.
    HalfAbs,
    /// `sign(t) / 2`, zero at the origin.
    HalfSign,
    /// Standard normal density.
    Gaussian,
    /// Linear interpolation of samples on increasing abscissae, zero outside.
    Tabulated { t: Vec<f64>, values: Vec<f64> },
}

impl Profile {
    pub fn tabulated(t: Vec<f64>, values: Vec<f64>) -> Result<Self, RidgeError> {
        if t.len() < 2 || t.len() != values.len() {
            return Err(RidgeError::Parameter("tabulated profile needs matching samples, at least two".into()));
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) || t.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(RidgeError::Parameter("tabulated abscissae must increase and all samples be finite".into()));
        }
        Ok(Profile::Tabulated { t, values })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Profile::Relu => t.max(0.0),
            Profile::HalfAbs => 0.5 * t.abs(),
            Profile::HalfSign => {
                if t == 0.0 {
                    0.0
                } else {
                    0.5 * t.signum()
                }
            }
            Profile::Gaussian => (-0.5 * t * t).exp() / (2.0 * PI).sqrt(),
            Profile::Tabulated { t: ts, values } => {
                if t < ts[0] || t > ts[ts.len() - 1] {
                    return 0.0;
                }
                let k = ts.partition_point(|s| *s <= t).clamp(1, ts.len() - 1);
                let f = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
                values[k - 1] * (1.0 - f) + values[k] * f
            }
        }
    }
}

/// `r(xi0^T x - tau)` at every point.
pub fn eval_ridge<P: AsRef<[f64]>>(r: &Profile, xi0: &[f64], tau: f64, pts: &[P]) -> Result<Vec<f64>, RidgeError> {
    check_unit(xi0)?;
    pts.iter()
        .map(|p| {
            let x = p.as_ref();
            if x.len() != xi0.len() {
                return Err(RidgeError::Dimension { expected: xi0.len(), got: x.len() });
            }
            Ok(r.eval(dot(xi0, x) - tau))
        })
        .collect()
}

/// `|<r_xi0, phi> - <r, R phi(., xi0)>| / (1 + |<r_xi0, phi>|)`.
///
/// The left side is a lattice sum over the field's square, the right side a
/// trapezoid sum in `t` at the lattice spacing over `|t| <= sqrt(2) x_max`.
pub fn ridge_identity_check(r: &Profile, xi0: &[f64], phi: &EuclideanField) -> Result<f64, RidgeError> {
    if xi0.len() != 2 {
        return Err(RidgeError::Dimension { expected: 2, got: xi0.len() });
    }
    check_unit(xi0)?;
    let (n, h) = (phi.n(), phi.spacing());
    let mut lhs = 0.0;
    for iy in 0..n {
        for ix in 0..n {
            let x = [phi.coord(ix), phi.coord(iy)];
            lhs += r.eval(dot(xi0, &x)) * phi.node(ix, iy);
        }
    }
    lhs *= h * h;
    let m = (std::f64::consts::SQRT_2 * phi.x_max() / h).ceil() as i64;
    let mut rhs = 0.0;
    for k in -m..=m {
        let t = k as f64 * h;
        let w = if k.abs() == m { 0.5 } else { 1.0 };
        rhs += w * r.eval(t) * line_integral(phi, t, xi0);
    }
    rhs *= h;
    Ok((lhs - rhs).abs() / (1.0 + lhs.abs()))
}

/// Filtered Radon transform of the ridge `r(xi0^T x)`, the measure
/// `1/2 (r(t) delta(xi - xi0) + r(-t) delta(xi + xi0))`.
///
/// The angular Diracs become single columns scaled by `1/w_j`, so grid
/// quadrature reproduces the action of the measure. The column at `-xi0` is
/// the mirror of the column at `xi0`, which makes the result exactly even.
pub fn ridge_filtered_radon(r: &Profile, xi0: &[f64], grid: &SphericalGrid, snap: bool) -> Result<Sinogram, RidgeError> {
    if xi0.len() != grid.d() {
        return Err(RidgeError::Dimension { expected: grid.d(), got: xi0.len() });
    }
    check_unit(xi0)?;
    let (j, distance) = grid.directions.nearest(xi0);
    if distance > ON_GRID && !snap {
        return Err(RidgeError::OffGrid { xi: xi0.to_vec(), distance });
    }
    let ja = grid.directions.antipode(j);
    let mut g = Sinogram::zeros(grid.clone(), SinogramKind::MeasureDensity);
    let (wj, wa) = (grid.directions.weight(j), grid.directions.weight(ja));
    for i in 0..grid.n_t() {
        let v = 0.5 * r.eval(grid.radial.t(i));
        g.set(i, j, v / wj);
        g.set(grid.radial.mirror(i), ja, v / wa);
    }
    Ok(g)
}
