use hyperspherical_grid::Sinogram;
use poly_calculus::{project_poly_with, IsotropicWindow, PlaneQuadrature, DEFAULT_EXTENT};
use radon_engine::DiracAtomList;

use crate::error::{check_unit, dot};
use crate::{kernel_h, MollifiedCorrections, ReLUNetwork, RidgeAtom, RidgeError};

/// Largest odd component, relative to `max |w|`, accepted by [`pseudoinverse_apply`].
pub const ODD_TOL: f64 = 1e-8;

/// `Delta_R^+ w(x) = int h(x; t, xi) w(t, xi)` by grid quadrature.
///
/// `w` must be even; apply `even_part` first when it is not.
pub fn pseudoinverse_apply<P: AsRef<[f64]> + Sync>(
    w: &Sinogram,
    pts: &[P],
    corr: &MollifiedCorrections,
) -> Result<Vec<f64>, RidgeError> {
    let scale = w.max_abs();
    let odd = if scale > 0.0 { 0.5 * w.odd_residual() / scale } else { 0.0 };
    if odd > ODD_TOL {
        return Err(RidgeError::OddPart(odd));
    }
    let grid = w.grid();
    check_points(pts, grid.d())?;
    let mut terms = Vec::new();
    for j in 0..grid.n_dirs() {
        for i in 0..grid.n_t() {
            let v = w.get(i, j);
            if v != 0.0 {
                terms.push((grid.radial.t(i), j, grid.weight(i, j) * v));
            }
        }
    }
    Ok(par_map(pts, |x| terms.iter().map(|&(t, j, c)| c * kernel_h(x, t, grid.directions.dir(j), corr)).sum()))
}

/// `sum_k a_k h(x; t_k, xi_k)` for a sum of Radon-domain Diracs.
pub fn pseudoinverse_apply_atoms<P: AsRef<[f64]> + Sync>(
    atoms: &DiracAtomList,
    pts: &[P],
    corr: &MollifiedCorrections,
) -> Result<Vec<f64>, RidgeError> {
    if let Some(a) = atoms.atoms().first() {
        check_points(pts, a.xi.len())?;
    }
    Ok(par_map(pts, |x| atoms.atoms().iter().map(|a| a.a * kernel_h(x, a.t, &a.xi, corr)).sum()))
}

fn check_points<P: AsRef<[f64]>>(pts: &[P], d: usize) -> Result<(), RidgeError> {
    for p in pts {
        let x = p.as_ref();
        if x.len() != d {
            return Err(RidgeError::Dimension { expected: d, got: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(RidgeError::Parameter(format!("non-finite point {x:?}")));
        }
    }
    Ok(())
}

pub(crate) fn par_map<P, F>(pts: &[P], f: F) -> Vec<f64>
where
    P: AsRef<[f64]> + Sync,
    F: Fn(&[f64]) -> f64 + Sync,
{
    let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(16);
    if pts.len() < 64 || threads == 1 {
        return pts.iter().map(|p| f(p.as_ref())).collect();
    }
    let mut out = vec![0.0; pts.len()];
    let chunk = pts.len().div_ceil(threads);
    let f = &f;
    std::thread::scope(|s| {
        for (o, p) in out.chunks_mut(chunk).zip(pts.chunks(chunk)) {
            s.spawn(move || {
                for (v, x) in o.iter_mut().zip(p) {
                    *v = f(x.as_ref());
                }
            });
        }
    });
    out
}

/// Extreme point `sign (relu(xi0^T x - t0) - (xi0^T x - t0)/2 - p(x))` of the
/// unit ball, where `p = Proj_{P_1} |xi0^T . - t0|/2`, so that the result has
/// a vanishing projection onto affine functions.
pub fn extreme_point(t0: f64, xi0: &[f64], sign: f64, win: &IsotropicWindow) -> Result<ReLUNetwork, RidgeError> {
    if xi0.len() != 2 {
        return Err(RidgeError::Dimension { expected: 2, got: xi0.len() });
    }
    check_unit(xi0)?;
    if sign != 1.0 && sign != -1.0 {
        return Err(RidgeError::Parameter(format!("sign must be +1 or -1, got {sign}")));
    }
    let quad = PlaneQuadrature::aligned([xi0[0], xi0[1]], t0, DEFAULT_EXTENT)?;
    let p = project_poly_with(|x| 0.5 * (dot(xi0, x) - t0).abs(), win, 1, &quad)?.coeffs.values();
    let b = sign * (0.5 * t0 - p[0]);
    let bvec = vec![sign * (-0.5 * xi0[0] - p[1]), sign * (-0.5 * xi0[1] - p[2])];
    ReLUNetwork::new(b, bvec, vec![RidgeAtom::new(sign, xi0, t0)])
}
