use hyperspherical_grid::Sinogram;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::PolyError;

/// Share of the `|t^k g|` mass in the outer tenth of the `t` range above which a warning is logged.
const MOMENT_TAIL_WARN: f64 = 1e-6;

/// `Phi_k(xi_j) = int t^k g(t, xi_j) dt` by the trapezoid rule, one value per direction.
pub fn moments(g: &Sinogram, k: u32) -> Vec<f64> {
    let grid = g.grid();
    let radial = &grid.radial;
    let cut = 0.9 * radial.t_max();
    let mut worst: f64 = 0.0;
    let out = (0..grid.n_dirs())
        .map(|j| {
            let col = g.column(j);
            let (mut acc, mut total, mut tail) = (0.0, 0.0, 0.0);
            for (i, v) in col.iter().enumerate() {
                let t = radial.t(i);
                let term = radial.weight(i) * t.powi(k as i32) * v;
                acc += term;
                total += term.abs();
                if t.abs() > cut {
                    tail += term.abs();
                }
            }
            if total > 0.0 {
                worst = worst.max(tail / total);
            }
            acc
        })
        .collect();
    if worst > MOMENT_TAIL_WARN {
        log::warn!("moment of order {k} has {worst:.2e} of its mass near the end of the t range");
    }
    out
}

/// Tolerances applied by [`range_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeTolerances {
    pub evenness: f64,
    pub moment: f64,
}

/// Least-squares fit of one moment to the homogeneous trigonometric monomials of degree `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentFit {
    pub k: u32,
    /// Largest absolute residual over the directions.
    pub residual: f64,
    /// Coefficients of `cos^a sin^b`, `a = k, k-1, ..., 0`.
    pub coefficients: Vec<f64>,
    /// `Phi_k - fit` at every direction.
    pub residuals: Vec<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeReport {
    /// `max |g(t, xi) - g(-t, -xi)|`.
    pub evenness_residual: f64,
    pub evenness_pass: bool,
    pub moments: Vec<MomentFit>,
    pub tolerances: RangeTolerances,
    pub pass: bool,
}

impl RangeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evenness and moment conditions of the Radon range for a planar sinogram.
pub fn range_check(g: &Sinogram, k_max: u32, tol: RangeTolerances) -> Result<RangeReport, PolyError> {
    let grid = g.grid();
    if grid.d() != 2 {
        return Err(PolyError::Dimension { expected: 2, got: grid.d() });
    }
    let evenness_residual = g.odd_residual();
    let thetas: Vec<f64> = grid.directions.iter().map(|xi| xi[1].atan2(xi[0])).collect();
    let mut fits = Vec::new();
    for k in 0..=k_max {
        let phi = moments(g, k);
        let design = DMatrix::from_fn(thetas.len(), k as usize + 1, |r, c| {
            let (s, co) = thetas[r].sin_cos();
            co.powi((k as usize - c) as i32) * s.powi(c as i32)
        });
        let rhs = DVector::from_column_slice(&phi);
        let coef = design.clone().svd(true, true).solve(&rhs, 1e-13).map_err(|e| PolyError::Parameter(e.to_string()))?;
        let residuals: Vec<f64> = (rhs - &design * &coef).iter().copied().collect();
        let residual = residuals.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
        fits.push(MomentFit { k, residual, coefficients: coef.iter().copied().collect(), residuals, pass: residual <= tol.moment });
    }
    let evenness_pass = evenness_residual <= tol.evenness;
    let pass = evenness_pass && fits.iter().all(|f| f.pass);
    Ok(RangeReport { evenness_residual, evenness_pass, moments: fits, tolerances: tol, pass })
}
