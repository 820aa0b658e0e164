use nalgebra::{DMatrix, DVector};
use ridge_atoms::{ReLUNetwork, RidgeAtom};
use serde::{Deserialize, Serialize};

use crate::{Dataset, Dictionary, LearnError};

/// Relative singular-value cutoff of the affine block and the active-set solves.
const RANK_TOL: f64 = 1e-12;
/// Relative norm below which a column counts as lying in the affine span.
const AFFINE_TOL: f64 = 1e-10;
/// Iterations between KKT checks and active-set polishing.
const CHECK_EVERY: usize = 10;
/// Support additions tried when finishing from an iterate.
const ACTIVE_SET_ROUNDS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Loss {
    Squared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    Fista,
    CoordinateDescent,
}

impl std::str::FromStr for Solver {
    type Err = LearnError;

    fn from_str(s: &str) -> Result<Self, LearnError> {
        match s {
            "fista" => Ok(Solver::Fista),
            "coordinate_descent" | "cd" => Ok(Solver::CoordinateDescent),
            _ => Err(LearnError::Parameter(format!("unknown solver {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub lambda: f64,
    pub loss: Loss,
    pub solver: Solver,
    pub max_iter: usize,
    /// Tolerance on the KKT residual, relative to `lambda`.
    pub tol_kkt: f64,
    /// Weights below `prune_threshold * max |a|` are set to zero.
    pub prune_threshold: f64,
    /// Experimental: one round of offset refinement around the active atoms.
    pub refine: bool,
}

impl FitConfig {
    pub fn new(lambda: f64) -> Self {
        FitConfig {
            lambda,
            loss: Loss::Squared,
            solver: Solver::CoordinateDescent,
            max_iter: 100_000,
            tol_kkt: 1e-8,
            prune_threshold: 1e-8,
            refine: false,
        }
    }

    fn validate(&self) -> Result<(), LearnError> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(LearnError::Parameter(format!("lambda = {} must be positive", self.lambda)));
        }
        if !(self.tol_kkt > 0.0) {
            return Err(LearnError::Parameter(format!("tol_kkt = {} must be positive", self.tol_kkt)));
        }
        if !(self.prune_threshold >= 0.0) || self.max_iter == 0 {
            return Err(LearnError::Parameter("prune_threshold must be non-negative and max_iter positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub network: ReLUNetwork,
    pub lambda: f64,
    pub solver: Solver,
    pub objective: f64,
    pub data_loss: f64,
    pub reg_cost: f64,
    pub kkt_residual: f64,
    pub iterations: usize,
    pub k0: usize,
    /// The points are affinely dependent; the affine part is the minimum-norm solution.
    pub rank_deficient: bool,
}

impl FitResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fit result serializes")
    }
}

/// `(objective, data_loss, reg_cost)` of `net` with
/// `data_loss = sum_m (y_m - f(x_m))^2` and `reg_cost = ||Delta_R f||_M`.
pub fn objective(net: &ReLUNetwork, data: &Dataset, lambda: f64) -> (f64, f64, f64) {
    let loss: f64 = data.points().iter().zip(data.targets()).map(|(x, y)| (y - net.eval(x)).powi(2)).sum();
    let reg = net.reg_cost();
    (loss + lambda * reg, loss, reg)
}

/// Least squares over the dictionary with an `l1` penalty on the ridge
/// weights and a free affine part.
pub fn fit(data: &Dataset, dict: &Dictionary, cfg: &FitConfig) -> Result<FitResult, LearnError> {
    cfg.validate()?;
    let first = fit_once(data, dict, cfg)?;
    if !cfg.refine {
        return Ok(first);
    }
    let mut refined = dict.clone();
    for atom in first.network.atoms() {
        let mut taus: Vec<f64> = dict.atoms().iter().filter(|(xi, _)| *xi == atom.xi).map(|(_, t)| *t).collect();
        taus.sort_by(f64::total_cmp);
        let k = taus.partition_point(|t| *t < atom.tau);
        if k > 0 {
            refined.push(&atom.xi, 0.5 * (taus[k - 1] + atom.tau))?;
        }
        if k + 1 < taus.len() {
            refined.push(&atom.xi, 0.5 * (taus[k + 1] + atom.tau))?;
        }
    }
    let second = fit_once(data, &refined, cfg)?;
    Ok(if second.objective <= first.objective { second } else { first })
}

struct Problem {
    /// Dictionary columns with the affine span removed.
    x: DMatrix<f64>,
    /// Targets with the affine span removed.
    y: DVector<f64>,
    col_sq: Vec<f64>,
    lambda: f64,
}

fn fit_once(data: &Dataset, dict: &Dictionary, cfg: &FitConfig) -> Result<FitResult, LearnError> {
    let d = data.d();
    if let Some((xi, _)) = dict.atoms().first() {
        if xi.len() != d {
            return Err(LearnError::Dimension { expected: d, got: xi.len() });
        }
    }
    let (m, p) = (data.len(), dict.len());
    let affine = DMatrix::from_fn(m, d + 1, |i, j| if j == 0 { 1.0 } else { data.points()[i][j - 1] });
    let phi = design_matrix(data, dict);
    let y = DVector::from_column_slice(data.targets());

    let svd = affine.clone().svd(true, false);
    let smax = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|s| **s > RANK_TOL * smax).count();
    let rank_deficient = rank < d + 1;
    if rank_deficient {
        log::warn!("affine block has rank {rank} < {}; using the minimum-norm affine part", d + 1);
    }
    let q = svd.u.expect("left singular vectors").columns(0, rank).into_owned();
    let remove = |v: &DMatrix<f64>| v - &q * (q.transpose() * v);
    let mut x = remove(&phi);
    let y_res = DVector::from_column_slice(remove(&DMatrix::from_column_slice(m, 1, y.as_slice())).as_slice());
    // Columns that are affine on the data carry only rounding noise after the removal.
    for k in 0..p {
        if x.column(k).norm() <= AFFINE_TOL * phi.column(k).norm() {
            x.column_mut(k).fill(0.0);
        }
    }
    let col_sq = (0..p).map(|k| x.column(k).norm_squared()).collect();
    let prob = Problem { x, y: y_res, col_sq, lambda: cfg.lambda };

    let (mut a, iterations) = match cfg.solver {
        Solver::CoordinateDescent => prob.coordinate_descent(cfg)?,
        Solver::Fista => prob.fista(cfg)?,
    };

    let amax = a.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let pruned: DVector<f64> = a.map(|v| if v.abs() <= cfg.prune_threshold * amax { 0.0 } else { v });
    if pruned != a {
        if let Some(polished) = prob.polish(&pruned) {
            if prob.kkt(&polished) <= cfg.tol_kkt {
                a = polished;
            }
        }
    }
    let kkt = prob.kkt(&a);

    let rest = &y - &phi * &a;
    let coef = affine.svd(true, true).solve(&rest, RANK_TOL * smax).expect("affine solve");
    let atoms = dict
        .atoms()
        .iter()
        .zip(a.iter())
        .filter(|(_, w)| **w != 0.0)
        .map(|((xi, tau), w)| RidgeAtom::new(*w, xi, *tau))
        .collect();
    let network = ReLUNetwork::new(coef[0], coef.as_slice()[1..].to_vec(), atoms)?;
    let (obj, loss, reg) = objective(&network, data, cfg.lambda);
    let k0 = network.atoms().len();
    Ok(FitResult {
        network,
        lambda: cfg.lambda,
        solver: cfg.solver,
        objective: obj,
        data_loss: loss,
        reg_cost: reg,
        kkt_residual: kkt,
        iterations,
        k0,
        rank_deficient,
    })
}

/// `Phi[m][p] = relu(xi_p^T x_m - tau_p)`, filled in parallel over atoms.
fn design_matrix(data: &Dataset, dict: &Dictionary) -> DMatrix<f64> {
    let (m, p) = (data.len(), dict.len());
    let mut cols = vec![0.0; m * p];
    if p == 0 {
        return DMatrix::zeros(m, 0);
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = p.div_ceil(threads) * m;
    std::thread::scope(|s| {
        for (c, part) in cols.chunks_mut(chunk).enumerate() {
            s.spawn(move || {
                for (k, col) in part.chunks_mut(m).enumerate() {
                    let (xi, tau) = &dict.atoms()[c * chunk / m + k];
                    for (v, x) in col.iter_mut().zip(data.points()) {
                        *v = (xi.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - tau).max(0.0);
                    }
                }
            });
        }
    });
    DMatrix::from_vec(m, p, cols)
}

fn soft(z: f64, k: f64) -> f64 {
    z.signum() * (z.abs() - k).max(0.0)
}

impl Problem {
    /// `c_p = 2 x_p^T (y - X a)`, the negative loss gradient.
    fn correlations(&self, a: &DVector<f64>) -> DVector<f64> {
        let r = &self.y - &self.x * a;
        self.x.tr_mul(&r) * 2.0
    }

    /// Largest violation of `|c_p| <= lambda` (inactive) and `c_p = lambda sign(a_p)`
    /// (active), relative to `lambda`.
    fn kkt(&self, a: &DVector<f64>) -> f64 {
        let c = self.correlations(a);
        let l = self.lambda;
        a.iter()
            .zip(c.iter())
            .map(|(&w, &g)| if w == 0.0 { (g.abs() - l).max(0.0) / l } else { (g - l * w.signum()).abs() / l })
            .fold(0.0, f64::max)
    }

    /// Exact minimizer on the support and signs of `a`:
    /// `X_S^T X_S a_S = X_S^T y - (lambda/2) sign(a_S)`. Weights whose sign
    /// flips leave the support and the system is solved again.
    /// Dependent support columns are first removed by moving along null
    /// vectors of `X_S`, which keeps `X a` and does not increase `||a||_1`.
    fn polish(&self, a: &DVector<f64>) -> Option<DVector<f64>> {
        let a = self.reduce_support(a.clone());
        let mut support: Vec<usize> = (0..a.len()).filter(|&k| a[k] != 0.0).collect();
        let signs: Vec<f64> = a.iter().map(|v| v.signum()).collect();
        let mut out = DVector::zeros(a.len());
        while !support.is_empty() {
            let xs = self.x.select_columns(&support);
            let s = DVector::from_iterator(support.len(), support.iter().map(|&k| signs[k]));
            let sol = self.support_solve(&xs, &s)?;
            let kept: Vec<usize> = support.iter().zip(sol.iter().zip(s.iter())).filter(|(_, (v, s))| *v * *s > 0.0).map(|(&k, _)| k).collect();
            if kept.len() == support.len() {
                for (i, &k) in support.iter().enumerate() {
                    out[k] = sol[i];
                }
                break;
            }
            support = kept;
        }
        Some(out)
    }

    /// Solves `X_S^T (y - X_S a) = (lambda/2) s` through the SVD of `X_S`,
    /// with two steps of refinement on the residual.
    fn support_solve(&self, xs: &DMatrix<f64>, s: &DVector<f64>) -> Option<DVector<f64>> {
        let svd = xs.clone().svd(true, true);
        let smax = svd.singular_values.max();
        if svd.singular_values.iter().any(|v| *v <= RANK_TOL * smax) {
            return None;
        }
        let (u, vt, sv) = (svd.u.as_ref()?, svd.v_t.as_ref()?, &svd.singular_values);
        let sq = sv.component_mul(sv);
        // (X_S^T X_S)^-1 g = V S^-2 V^T g
        let inv_gram = |g: &DVector<f64>| vt.tr_mul(&(vt * g).component_div(&sq));
        let half = 0.5 * self.lambda;
        let mut a = vt.tr_mul(&u.tr_mul(&self.y).component_div(sv)) - inv_gram(s) * half;
        for _ in 0..2 {
            let g = xs.tr_mul(&(&self.y - xs * &a)) - s * half;
            a += inv_gram(&g);
        }
        Some(a)
    }

    fn reduce_support(&self, mut a: DVector<f64>) -> DVector<f64> {
        loop {
            let support: Vec<usize> = (0..a.len()).filter(|&k| a[k] != 0.0).collect();
            if support.len() < 2 {
                return a;
            }
            let xs = self.x.select_columns(&support);
            let eig = xs.tr_mul(&xs).symmetric_eigen();
            let top = eig.eigenvalues.max();
            let (j, low) = eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &e)| if e < b.1 { (i, e) } else { b });
            if low > RANK_TOL * top {
                return a;
            }
            let mut v = eig.eigenvectors.column(j).into_owned();
            let slope: f64 = support.iter().zip(v.iter()).map(|(&k, vi)| a[k].signum() * vi).sum();
            if slope > 0.0 {
                v = -v;
            }
            // First support weight to reach zero along `v`.
            let Some((i, t)) = support
                .iter()
                .zip(v.iter())
                .enumerate()
                .filter(|(_, (&k, vi))| a[k] * **vi < 0.0)
                .map(|(i, (&k, vi))| (i, -a[k] / vi))
                .min_by(|x, y| x.1.total_cmp(&y.1))
            else {
                return a;
            };
            for (&k, vi) in support.iter().zip(v.iter()) {
                a[k] += t * vi;
            }
            a[support[i]] = 0.0;
        }
    }

    /// Polishes `a` and returns the result if it meets the tolerance. An
    /// inactive weight that violates the KKT conditions joins the support
    /// with the sign of its correlation and the support is polished again.
    fn try_finish(&self, a: &DVector<f64>, tol: f64) -> Option<DVector<f64>> {
        let fallback = || (self.kkt(a) <= tol).then(|| a.clone());
        let mut cur = a.clone();
        for _ in 0..ACTIVE_SET_ROUNDS {
            let Some(p) = self.polish(&cur) else { break };
            if self.kkt(&p) <= tol {
                return Some(p);
            }
            let c = self.correlations(&p);
            let (k, excess) = (0..p.len())
                .filter(|&k| p[k] == 0.0)
                .map(|k| (k, c[k].abs() - self.lambda))
                .fold((0, 0.0), |b, x| if x.1 > b.1 { x } else { b });
            if excess <= 0.0 {
                break;
            }
            let amax = p.iter().fold(0.0f64, |s, v| s.max(v.abs()));
            cur = p;
            cur[k] = c[k].signum() * 1e-6 * amax.max(f64::MIN_POSITIVE);
        }
        fallback()
    }

    fn coordinate_descent(&self, cfg: &FitConfig) -> Result<(DVector<f64>, usize), LearnError> {
        let p = self.x.ncols();
        let mut a = DVector::zeros(p);
        let mut r = self.y.clone();
        for it in 1..=cfg.max_iter {
            for k in 0..p {
                let n = self.col_sq[k];
                if n == 0.0 {
                    continue;
                }
                let col = self.x.column(k);
                let z = a[k] + col.dot(&r) / n;
                let new = soft(z, self.lambda / (2.0 * n));
                if new != a[k] {
                    r.axpy(a[k] - new, &col, 1.0);
                    a[k] = new;
                }
            }
            if it % CHECK_EVERY == 0 || it == cfg.max_iter {
                if let Some(done) = self.try_finish(&a, cfg.tol_kkt) {
                    return Ok((done, it));
                }
            }
        }
        Err(LearnError::NotConverged { iterations: cfg.max_iter, residual: self.kkt(&a) })
    }

    fn fista(&self, cfg: &FitConfig) -> Result<(DVector<f64>, usize), LearnError> {
        let p = self.x.ncols();
        let mut a = DVector::zeros(p);
        if p == 0 {
            return Ok((a, 0));
        }
        let small = if self.x.nrows() <= p { self.x.clone() * self.x.transpose() } else { self.x.tr_mul(&self.x) };
        let lip = 2.0 * small.symmetric_eigenvalues().max();
        if lip <= 0.0 {
            return Ok((a, 0));
        }
        let mut z = a.clone();
        let mut t = 1.0f64;
        for it in 1..=cfg.max_iter {
            let g = self.correlations(&z);
            let next = (&z + g / lip).map(|v| soft(v, self.lambda / lip));
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            z = &next + (&next - &a) * ((t - 1.0) / t_next);
            a = next;
            t = t_next;
            if it % CHECK_EVERY == 0 || it == cfg.max_iter {
                if let Some(done) = self.try_finish(&a, cfg.tol_kkt) {
                    return Ok((done, it));
                }
            }
        }
        Err(LearnError::NotConverged { iterations: cfg.max_iter, residual: self.kkt(&a) })
    }
}
