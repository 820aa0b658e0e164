//! Learner examples and a brute-force lasso oracle written out here.

mod common;

use std::f64::consts::PI;

use common::*;
use nalgebra::{DMatrix, DVector};
use ridge_atoms::{ReLUNetwork, RidgeAtom};
use variational_learner::*;

/// Minimum of `||y - A c - Phi a||^2 + lambda ||a||_1` over every sign pattern
/// of `a`, each solved from its normal equations.
fn lasso_oracle(data: &Dataset, dict: &Dictionary, lambda: f64) -> f64 {
    let (m, p) = (data.len(), dict.len());
    let cols: Vec<Vec<f64>> = std::iter::once(vec![1.0; m])
        .chain((0..2).map(|j| data.points().iter().map(|x| x[j]).collect()))
        .chain(dict.atoms().iter().map(|(xi, tau)| data.points().iter().map(|x| (xi[0] * x[0] + xi[1] * x[1] - tau).max(0.0)).collect()))
        .collect();
    let y = DVector::from_column_slice(data.targets());
    let mut best = f64::INFINITY;
    for code in 0..3usize.pow(p as u32) {
        let signs: Vec<f64> = (0..p).map(|k| (code / 3usize.pow(k as u32) % 3) as f64 - 1.0).collect();
        let active: Vec<usize> = (0..p).filter(|&k| signs[k] != 0.0).collect();
        let idx: Vec<usize> = (0..3).chain(active.iter().map(|k| k + 3)).collect();
        let a = DMatrix::from_fn(m, idx.len(), |i, j| cols[idx[j]][i]);
        let mut rhs = a.transpose() * &y;
        for (j, &k) in active.iter().enumerate() {
            rhs[3 + j] -= 0.5 * lambda * signs[k];
        }
        let Some(sol) = (a.transpose() * &a).lu().solve(&rhs) else { continue };
        if active.iter().enumerate().any(|(j, &k)| sol[3 + j] * signs[k] <= 0.0) {
            continue;
        }
        let loss = (&y - &a * &sol).norm_squared();
        let reg: f64 = (0..active.len()).map(|j| sol[3 + j].abs()).sum();
        best = best.min(loss + lambda * reg);
    }
    best
}

#[test]
fn dictionary_construction() {
    let data = Dataset::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![0.0, 1.0]).unwrap();
    let dict = build_dictionary(&data, 2, 3).unwrap();
    assert_eq!(dict.atoms(), &[(vec![1.0, 0.0], 0.0), (vec![1.0, 0.0], 0.5), (vec![1.0, 0.0], 1.0)]);

    let data = random_data(3, 12);
    let dict = build_dictionary(&data, 16, 5).unwrap();
    assert_eq!(dict.len(), 8 * 5);
    for (k, (xi, tau)) in dict.atoms().iter().enumerate() {
        assert!(xi[0] > 0.0 || (xi[0] == 0.0 && xi[1] > 0.0));
        assert!(dict.atoms()[..k].iter().all(|(x, t)| x != xi || t != tau));
    }
    assert!(build_dictionary(&data, 16, 1).is_err());
    assert!(build_dictionary(&data, 15, 3).is_err());
}

#[test]
fn large_lambda_gives_affine_regression() {
    let data = Dataset::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]], vec![0.0, 1.0, 0.0]).unwrap();
    let dict = build_dictionary(&data, 8, 3).unwrap();
    let r = fit(&data, &dict, &FitConfig::new(1e6)).unwrap();
    assert!(r.network.atoms().is_empty());
    assert_eq!(r.k0, 0);
    assert!(r.data_loss < 1e-28);
    assert!((r.network.b).abs() < 1e-14 && (r.network.bvec[0] - 1.0).abs() < 1e-14 && r.network.bvec[1].abs() < 1e-14);

    // Against the normal equations of plain affine least squares.
    let data = random_data(11, 15);
    let dict = build_dictionary(&data, 16, 4).unwrap();
    let r = fit(&data, &dict, &FitConfig::new(1e6)).unwrap();
    assert_eq!(r.k0, 0);
    let a = DMatrix::from_fn(15, 3, |i, j| if j == 0 { 1.0 } else { data.points()[i][j - 1] });
    let coef = (a.transpose() * &a).lu().solve(&(a.transpose() * DVector::from_column_slice(data.targets()))).unwrap();
    assert!((r.network.b - coef[0]).abs() < 1e-12);
    assert!((r.network.bvec[0] - coef[1]).abs() < 1e-12 && (r.network.bvec[1] - coef[2]).abs() < 1e-12);
}

#[test]
fn affine_data_needs_no_ridges() {
    let data = Dataset::new(vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![-1.0, 3.0]], vec![1.0, 2.0, -3.0]).unwrap();
    let dict = build_dictionary(&data, 12, 4).unwrap();
    for lambda in [1e-6, 1.0, 1e3] {
        let r = fit(&data, &dict, &FitConfig::new(lambda)).unwrap();
        assert_eq!(r.k0, 0);
        assert!(r.data_loss < 1e-24);
    }
    let collinear = Dataset::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]], vec![0.0, 1.0, 2.0]).unwrap();
    let r = fit(&collinear, &build_dictionary(&collinear, 4, 3).unwrap(), &FitConfig::new(1.0)).unwrap();
    assert!(r.rank_deficient);
    assert!(r.data_loss < 1e-24);
}

#[test]
fn planted_neuron_is_recovered() {
    let data = planted_data();
    let dict = planted_dictionary(&data);
    let r = fit(&data, &dict, &FitConfig::new(1e-4)).unwrap();
    let mut err: f64 = 0.0;
    for i in 0..=20 {
        for j in 0..=20 {
            let x = [i as f64 / 20.0, j as f64 / 20.0];
            err = err.max((r.network.eval(&x) - planted(&x)).abs());
        }
    }
    assert!(err <= 1e-2, "{err}");
    assert!(r.k0 <= 3);
    assert!(r.k0 < data.len());
    assert!(r.kkt_residual <= 1e-6);
}

#[test]
fn solvers_reach_the_oracle_optimum() {
    let data = random_data(5, 8);
    let dict = Dictionary::from_atoms(build_dictionary(&data, 8, 2).unwrap().atoms().to_vec()).unwrap();
    assert_eq!(dict.len(), 8);
    for lambda in [0.05, 0.5] {
        let oracle = lasso_oracle(&data, &dict, lambda);
        for solver in [Solver::CoordinateDescent, Solver::Fista] {
            let r = fit(&data, &dict, &FitConfig { solver, ..FitConfig::new(lambda) }).unwrap();
            assert!((r.objective - oracle).abs() <= 1e-10 * (1.0 + oracle), "{solver:?} {} vs {oracle}", r.objective);
        }
    }
}

#[test]
fn solvers_agree_on_the_small_instance() {
    let data = random_data(2, 10);
    let dict = build_dictionary(&data, 16, 5).unwrap();
    assert_eq!(dict.len(), 40);
    let cd = fit(&data, &dict, &FitConfig { solver: Solver::CoordinateDescent, ..FitConfig::new(0.01) }).unwrap();
    let fista = fit(&data, &dict, &FitConfig { solver: Solver::Fista, ..FitConfig::new(0.01) }).unwrap();
    assert!((cd.objective - fista.objective).abs() <= 1e-8);
    assert!(cd.kkt_residual <= 1e-6 && fista.kkt_residual <= 1e-6);
    for r in [&cd, &fista] {
        assert!((r.objective - (r.data_loss + 0.01 * r.reg_cost)).abs() <= 1e-12);
        assert_eq!(r.reg_cost, ridge_atoms::network_to_measure(&r.network).norm());
    }
}

#[test]
fn non_convergence_is_reported() {
    let data = random_data(2, 10);
    let dict = build_dictionary(&data, 16, 5).unwrap();
    let cfg = FitConfig { max_iter: 1, solver: Solver::Fista, ..FitConfig::new(0.01) };
    assert!(matches!(fit(&data, &dict, &cfg), Err(LearnError::NotConverged { .. })));
    assert!(fit(&data, &dict, &FitConfig::new(0.0)).is_err());
    assert!(fit(&data, &dict, &FitConfig { tol_kkt: 0.0, ..FitConfig::new(1.0) }).is_err());
}

#[test]
fn objective_examples() {
    let zero = Dataset::new(vec![vec![0.0, 1.0], vec![2.0, 0.5]], vec![0.0, 0.0]).unwrap();
    assert_eq!(objective(&ReLUNetwork::affine(0.0, vec![0.0, 0.0]).unwrap(), &zero, 3.0), (0.0, 0.0, 0.0));
    let net = ReLUNetwork::new(0.0, vec![0.0, 0.0], vec![RidgeAtom::new(2.0, &[0.6, 0.8], 5.0)]).unwrap();
    let (obj, loss, reg) = objective(&net, &random_data(1, 6), 0.7);
    assert_eq!(reg, 2.0);
    assert_eq!(obj, loss + 0.7 * reg);
}

#[test]
fn similarity_examples() {
    let net = ReLUNetwork::new(0.0, vec![0.0, 0.0], vec![RidgeAtom::new(1.0, &[1.0, 0.0], 1.0)]).unwrap();
    let g = similarity_transform(&net, 2.0, &[1.0, 0.0, 0.0, 1.0], &[0.0, 0.0]).unwrap();
    assert_eq!(g.atoms(), &[RidgeAtom::new(2.0, &[1.0, 0.0], 0.5)]);
    for x in [[0.3, 1.0], [0.7, -2.0], [4.0, 0.0]] {
        assert!((g.eval(&x) - 2.0 * (x[0] - 0.5f64).max(0.0)).abs() < 1e-15);
    }

    let rot = [0.0, -1.0, 1.0, 0.0];
    let net = ReLUNetwork::new(0.5, vec![1.0, -1.0], vec![RidgeAtom::new(1.5, &[0.6, 0.8], 0.2), RidgeAtom::new(-1.0, &[0.0, 1.0], -1.0)]).unwrap();
    let g = similarity_transform(&net, 1.0, &rot, &[0.0, 0.0]).unwrap();
    assert_eq!(g.reg_cost(), net.reg_cost());
    assert_eq!(g.atoms()[0].a, 1.5);
    assert_eq!(g.atoms()[0].xi, vec![0.8, -0.6]);
    assert!(similarity_transform(&net, 0.0, &rot, &[0.0, 0.0]).is_err());
    assert!(similarity_transform(&net, 1.0, &[1.0, 1.0, 0.0, 1.0], &[0.0, 0.0]).is_err());
}

#[test]
fn invariance_of_the_learning_problem() {
    let data = planted_data();
    let dict = planted_dictionary(&data);
    let cfg = FitConfig::new(1e-3);
    let same = invariance_experiment(&data, &dict, &cfg, 1.0, &[1.0, 0.0, 0.0, 1.0], &[0.0, 0.0]).unwrap();
    assert!(same.objective_gap <= 1e-10);

    let (c, s) = ((PI / 6.0).cos(), (PI / 6.0).sin());
    let report = invariance_experiment(&data, &dict, &cfg, 3.0, &[c, -s, s, c], &[1.0, -1.0]).unwrap();
    assert!(report.objective_gap <= 1e-6, "{}", report.objective_gap);
    assert!(report.transported_gap.abs() <= 1e-6);
    assert!(report.transported_back_gap.abs() <= 1e-6);
    assert!((report.reg_cost - 3.0 * report.transported_reg_cost).abs() <= 1e-12 * report.reg_cost);
}

#[test]
fn csv_input() {
    let data = Dataset::from_csv("x1,x2,y\n0,0,1\n1,0.5,2\n").unwrap();
    assert_eq!(data.points(), &[vec![0.0, 0.0], vec![1.0, 0.5]]);
    assert_eq!(Dataset::from_csv(&data.to_csv()).unwrap(), data);
    assert!(matches!(Dataset::from_csv(""), Err(LearnError::Csv { line: 1, .. })));
    assert!(matches!(Dataset::from_csv("x1,x2,y\n"), Err(LearnError::Csv { .. })));
    assert!(matches!(Dataset::from_csv("x1,y\n0,1\nfoo,2\n"), Err(LearnError::Csv { line: 3, .. })));
    assert!(matches!(Dataset::from_csv("x1,x2,y\n0,1,2\n3,4\n"), Err(LearnError::Csv { line: 3, .. })));
    assert!(matches!(Dataset::from_csv("a,b\n0,1\n"), Err(LearnError::Csv { line: 1, .. })));
    assert!(Dataset::from_csv("x1,y\n0,1\n0,2\n").is_err());
}

#[test]
fn fit_result_json_embeds_the_network() {
    let data = planted_data();
    let r = fit(&data, &planted_dictionary(&data), &FitConfig::new(1e-2)).unwrap();
    let json = r.to_json();
    assert!(json.contains(&format!("\"network\":{}", r.network.to_json())));
    let back: FitResult = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
