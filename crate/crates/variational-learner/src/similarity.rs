use ridge_atoms::{ReLUNetwork, RidgeAtom};
use serde::Serialize;

use crate::{fit, objective, Dataset, Dictionary, FitConfig, FitResult, LearnError};

/// `g(x) = net(s U x - shift)` for `s > 0` and orthogonal `U` (row-major, `d x d`).
///
/// Atom-wise `a' = s a`, `xi' = U^T xi`, `tau' = (tau + xi^T shift) / s`; the
/// affine part becomes `b - bvec^T shift + s (U^T bvec)^T x`.
pub fn similarity_transform(net: &ReLUNetwork, s: f64, u: &[f64], shift: &[f64]) -> Result<ReLUNetwork, LearnError> {
    let d = net.d();
    check_similarity(d, s, u, shift)?;
    let ut = |v: &[f64]| -> Vec<f64> { (0..d).map(|i| (0..d).map(|k| u[k * d + i] * v[k]).sum()).collect() };
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let atoms = net
        .atoms()
        .iter()
        .map(|a| RidgeAtom { a: s * a.a, xi: normalize(ut(&a.xi)), tau: (a.tau + dot(&a.xi, shift)) / s })
        .collect();
    let bvec = ut(&net.bvec).into_iter().map(|v| s * v).collect();
    Ok(ReLUNetwork::new(net.b - dot(&net.bvec, shift), bvec, atoms)?)
}

/// Removes the rounding drift of `U^T xi` so the result passes the unit-norm check.
fn normalize(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn check_similarity(d: usize, s: f64, u: &[f64], shift: &[f64]) -> Result<(), LearnError> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(LearnError::Parameter(format!("scale s = {s} must be positive")));
    }
    if u.len() != d * d {
        return Err(LearnError::Dimension { expected: d * d, got: u.len() });
    }
    if shift.len() != d {
        return Err(LearnError::Dimension { expected: d, got: shift.len() });
    }
    for i in 0..d {
        for j in 0..d {
            let g: f64 = (0..d).map(|k| u[k * d + i] * u[k * d + j]).sum();
            if (g - if i == j { 1.0 } else { 0.0 }).abs() > 1e-12 {
                return Err(LearnError::Parameter("U is not orthogonal".into()));
            }
        }
    }
    Ok(())
}

/// Outcome of [`invariance_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub s: f64,
    pub objective: f64,
    pub objective_transformed: f64,
    /// `|objective - objective_transformed|`.
    pub objective_gap: f64,
    /// Objective of the transported original optimum in the transformed problem, minus its optimum.
    pub transported_gap: f64,
    /// Objective of the transported transformed optimum in the original problem, minus its optimum.
    pub transported_back_gap: f64,
    pub reg_cost: f64,
    /// `reg_cost` of the original optimum carried into the transformed problem.
    pub transported_reg_cost: f64,
    pub original: FitResult,
    pub transformed: FitResult,
}

/// Fits the problem and its image under `x -> s U x - shift` with
/// `lambda' = s lambda` and the dictionary mapped atom-wise.
///
/// A network `f` of the original problem is carried over as
/// `g(x') = f(x)` for `x' = s U x - shift`, so `g` has the same data loss and
/// `reg_cost(g) = reg_cost(f) / s`, and the two objectives coincide.
pub fn invariance_experiment(
    data: &Dataset,
    dict: &Dictionary,
    cfg: &FitConfig,
    s: f64,
    u: &[f64],
    shift: &[f64],
) -> Result<InvarianceReport, LearnError> {
    let d = data.d();
    check_similarity(d, s, u, shift)?;
    let forward = |x: &[f64]| -> Vec<f64> { (0..d).map(|i| s * (0..d).map(|k| u[i * d + k] * x[k]).sum::<f64>() - shift[i]).collect() };
    let data_t = Dataset::new(data.points().iter().map(|x| forward(x)).collect(), data.targets().to_vec())?;

    // g(x') = f(U^T (x' + shift) / s), a similarity with scale 1/s, rotation U^T and shift -U^T shift / s.
    let ut: Vec<f64> = (0..d * d).map(|k| u[(k % d) * d + k / d]).collect();
    let back_shift: Vec<f64> = (0..d).map(|i| -(0..d).map(|k| u[k * d + i] * shift[k]).sum::<f64>() / s).collect();
    let carry = |net: &ReLUNetwork| similarity_transform(net, 1.0 / s, &ut, &back_shift);
    let carry_back = |net: &ReLUNetwork| similarity_transform(net, s, u, shift);

    let mut dict_t = Dictionary::from_atoms(Vec::new())?;
    for (xi, tau) in dict.atoms() {
        let probe = ReLUNetwork::new(0.0, vec![0.0; d], vec![RidgeAtom::new(1.0, xi, *tau)])?;
        let moved = carry(&probe)?;
        let atom = &moved.atoms()[0];
        dict_t.push(&atom.xi, atom.tau)?;
    }
    let cfg_t = FitConfig { lambda: s * cfg.lambda, ..cfg.clone() };

    let (original, transformed) = std::thread::scope(|sc| {
        let a = sc.spawn(|| fit(data, dict, cfg));
        let b = sc.spawn(|| fit(&data_t, &dict_t, &cfg_t));
        (a.join().expect("fit thread"), b.join().expect("fit thread"))
    });
    let (original, transformed) = (original?, transformed?);

    let moved = carry(&original.network)?;
    let (moved_obj, _, moved_reg) = objective(&moved, &data_t, cfg_t.lambda);
    let returned = carry_back(&transformed.network)?;
    let (returned_obj, _, _) = objective(&returned, data, cfg.lambda);
    Ok(InvarianceReport {
        s,
        objective: original.objective,
        objective_transformed: transformed.objective,
        objective_gap: (original.objective - transformed.objective).abs(),
        transported_gap: moved_obj - transformed.objective,
        transported_back_gap: returned_obj - original.objective,
        reg_cost: original.reg_cost,
        transported_reg_cost: moved_reg,
        original,
        transformed,
    })
}
