use std::f64::consts::PI;

use hyperspherical_grid::{Sinogram, SinogramKind, SphericalGrid};
use poly_calculus::{range_check, RangeTolerances};
use radon_engine::{
    fbp, fourier_slice_check, measure_norm_witness, radon_isotropic, DiracAtom, DiracAtomList, EuclideanField,
    IsoOptions, RadialFilterSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ridge_atoms::{kernel_h, KernelOracle, MollifiedCorrections};
use serde::Serialize;

use crate::config::{RunConfig, Suite};
use crate::error::run_err;
use crate::CliError;

pub const FBP_TOL: f64 = 1e-2;
pub const SLICE_TOL: f64 = 1e-3;
pub const EVENNESS_TOL: f64 = 1e-12;
pub const MOMENT_TOL: f64 = 1e-6;
pub const COUNTER_MIN: f64 = 0.1;
pub const KERNEL_TOL: f64 = 1e-4;
pub const KERNEL_DECAY_TOL: f64 = 1e-3;
pub const WITNESS_MIN: f64 = 2.9;
pub const SUP_NORM_SLACK: f64 = 1e-6;

/// How a residual is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn new(check: impl Into<String>, residual: f64, relation: Relation, tolerance: f64) -> Self {
        let pass = match relation {
            Relation::AtMost => residual <= tolerance,
            Relation::Above => residual > tolerance,
            Relation::AtLeast => residual >= tolerance,
        };
        Check { check: check.into(), residual, tolerance, relation, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl CheckReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        CheckReport { suite, checks, pass }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<CheckReport, CliError> {
    let checks = match suite {
        Suite::Fbp => fbp_suite(&cfg.grid()?)?,
        Suite::Slice => slice_suite(cfg.seed)?,
        Suite::Range => range_suite(&cfg.grid()?)?,
        Suite::Kernel => kernel_suite(cfg)?,
        Suite::MeasureNorm => measure_norm_suite(&cfg.grid()?)?,
    };
    Ok(CheckReport::new(suite, checks))
}

fn unit_gaussian(x: &[f64]) -> f64 {
    (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp() / (2.0 * PI)
}

/// Square lattice of `n * n` points centred on `c` with half-width `h`.
pub fn lattice(c: [f64; 2], h: f64, n: usize) -> Vec<[f64; 2]> {
    let step = 2.0 * h / (n - 1) as f64;
    (0..n * n).map(|k| [c[0] - h + (k % n) as f64 * step, c[1] - h + (k / n) as f64 * step]).collect()
}

/// Relative L2 error of the reconstruction of the unit Gaussian centred at `x0`.
pub fn fbp_gaussian_error(grid: &SphericalGrid, x0: [f64; 2]) -> Result<f64, CliError> {
    let g = radon_isotropic(|w| (-w * w / 2.0).exp(), &x0, IsoOptions::new(2)).map_err(run_err)?.sample(grid).map_err(run_err)?;
    let pts = lattice(x0, 4.0, 64);
    let rec = fbp(&g, &pts, &RadialFilterSpec::new(2)).map_err(run_err)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (p, r) in pts.iter().zip(&rec) {
        let f = unit_gaussian(&[p[0] - x0[0], p[1] - x0[1]]);
        num += (r - f) * (r - f);
        den += f * f;
    }
    Ok((num / den).sqrt())
}

fn fbp_suite(grid: &SphericalGrid) -> Result<Vec<Check>, CliError> {
    Ok(vec![
        Check::new("fbp relative L2, centred Gaussian", fbp_gaussian_error(grid, [0.0, 0.0])?, Relation::AtMost, FBP_TOL),
        Check::new("fbp relative L2, Gaussian at (2,2)", fbp_gaussian_error(grid, [2.0, 2.0])?, Relation::AtMost, FBP_TOL),
    ])
}

fn slice_suite(seed: u64) -> Result<Vec<Check>, CliError> {
    let field = EuclideanField::sampled(8.0, 512, unit_gaussian).map_err(run_err)?;
    let jitter = ChaCha8Rng::seed_from_u64(seed).random_range(0.0..PI / 8.0);
    (0..8)
        .map(|k| {
            let theta = jitter + k as f64 * PI / 8.0;
            let r = fourier_slice_check(&field, &[theta.cos(), theta.sin()], 6.0).map_err(run_err)?;
            Ok(Check::new(format!("fourier slice, theta = {theta}"), r, Relation::AtMost, SLICE_TOL))
        })
        .collect()
}

fn range_suite(grid: &SphericalGrid) -> Result<Vec<Check>, CliError> {
    let tol = RangeTolerances { evenness: EVENNESS_TOL, moment: MOMENT_TOL };
    let mut checks = Vec::new();
    for x0 in [[0.0, 0.0], [2.0, 2.0]] {
        let g = radon_isotropic(|w| (-w * w / 2.0).exp(), &x0, IsoOptions::new(2)).map_err(run_err)?.sample(grid).map_err(run_err)?;
        let report = range_check(&g, 3, tol).map_err(run_err)?;
        let tag = format!("Gaussian at ({}, {})", x0[0], x0[1]);
        checks.push(Check::new(format!("evenness, {tag}"), report.evenness_residual, Relation::AtMost, EVENNESS_TOL));
        for m in &report.moments {
            checks.push(Check::new(format!("moment k = {}, {tag}", m.k), m.residual, Relation::AtMost, MOMENT_TOL));
        }
    }
    let counter = Sinogram::from_fn(grid.clone(), SinogramKind::Function, |t, xi| {
        t * (3.0 * xi[1].atan2(xi[0])).cos() * (-t * t).exp()
    });
    let report = range_check(&counter, 1, tol).map_err(run_err)?;
    checks.push(Check::new("moment k = 1 rejects t cos(3 theta) exp(-t^2)", report.moments[1].residual, Relation::Above, COUNTER_MIN));
    Ok(checks)
}

/// Points, offsets and directions of the kernel comparison.
pub fn kernel_samples() -> (Vec<[f64; 2]>, Vec<f64>, Vec<[f64; 2]>) {
    let pts = vec![[0.0, 0.0], [1.0, -2.0], [-3.0, 1.5], [2.5, 2.5], [0.0, -4.0]];
    let ts = vec![-4.0, -2.0, 0.0, 1.7, 4.0];
    let dirs = (0..8)
        .map(|k| {
            let a = 0.3 + k as f64 * PI / 4.0;
            [a.cos(), a.sin()]
        })
        .collect();
    (pts, ts, dirs)
}

fn kernel_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let win = cfg.window()?;
    let corr = MollifiedCorrections::new(&win);
    let oracle = KernelOracle::new(&win).map_err(run_err)?;
    let (pts, ts, dirs) = kernel_samples();
    let mut worst: f64 = 0.0;
    for x in &pts {
        for &t in &ts {
            for xi in &dirs {
                worst = worst.max((kernel_h(x, t, xi, &corr) - oracle.h(x, t, xi).map_err(run_err)?).abs());
            }
        }
    }
    Ok(vec![
        Check::new("max |h - h_oracle| over 5 x 5 x 8 samples", worst, Relation::AtMost, KERNEL_TOL),
        Check::new("|h(0; 20, e1)|", kernel_h(&[0.0, 0.0], 20.0, &[1.0, 0.0], &corr).abs(), Relation::AtMost, KERNEL_DECAY_TOL),
        Check::new("|h(0; -20, (0.6, 0.8))|", kernel_h(&[0.0, 0.0], -20.0, &[0.6, 0.8], &corr).abs(), Relation::AtMost, KERNEL_DECAY_TOL),
    ])
}

fn measure_norm_suite(grid: &SphericalGrid) -> Result<Vec<Check>, CliError> {
    let list = |atoms| DiracAtomList::new(atoms).map_err(run_err);
    let single = list(vec![DiracAtom::new(1.0, 0.7, &[0.6, 0.8])])?;
    let pair = list(vec![DiracAtom::new(1.0, 0.0, &[1.0, 0.0]), DiracAtom::new(-2.0, 3.0, &[0.0, 1.0])])?;
    let mut checks = Vec::new();
    for eps in [1.0, 0.5, 0.125] {
        let w = measure_norm_witness(&single, eps, grid).map_err(run_err)?;
        checks.push(Check::new(format!("single atom |bound - 1|, eps = {eps}"), (w.lower_bound - 1.0).abs(), Relation::AtMost, 0.0));
    }
    let mut previous = f64::NEG_INFINITY;
    let mut worst_drop: f64 = 0.0;
    for eps in [1.0, 0.5, 0.25, 0.125] {
        let w = measure_norm_witness(&pair, eps, grid).map_err(run_err)?;
        worst_drop = worst_drop.max(previous - w.lower_bound);
        previous = w.lower_bound;
        if eps == 0.125 {
            checks.push(Check::new("two atoms, bound at eps = 1/8", w.lower_bound, Relation::AtLeast, WITNESS_MIN));
            checks.push(Check::new("two atoms, witness sup-norm at eps = 1/8", w.sup_norm, Relation::AtMost, 1.0 + SUP_NORM_SLACK));
        }
    }
    checks.push(Check::new("largest decrease of the bound as eps halves", worst_drop, Relation::AtMost, 0.0));
    Ok(checks)
}
