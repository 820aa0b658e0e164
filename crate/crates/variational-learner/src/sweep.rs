use std::fmt::Write;

use crate::{fit, Dataset, Dictionary, FitConfig, LearnError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub data_loss: f64,
    pub reg_cost: f64,
    pub k0: usize,
}

/// Independent fits at each `lambda`, run concurrently, in input order.
pub fn lambda_sweep(data: &Dataset, dict: &Dictionary, cfg: &FitConfig, lambdas: &[f64]) -> Result<Vec<SweepRow>, LearnError> {
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = lambdas
            .iter()
            .map(|&lambda| {
                let cfg = FitConfig { lambda, ..cfg.clone() };
                s.spawn(move || fit(data, dict, &cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("fit thread")).collect()
    });
    results
        .into_iter()
        .map(|r| r.map(|f| SweepRow { lambda: f.lambda, data_loss: f.data_loss, reg_cost: f.reg_cost, k0: f.k0 }))
        .collect()
}

/// `lambda`, `data_loss`, `reg_cost`, `K0`, tab separated with a header.
pub fn sweep_tsv(rows: &[SweepRow]) -> String {
    let mut out = String::from("lambda\tdata_loss\treg_cost\tK0\n");
    for r in rows {
        writeln!(out, "{}\t{}\t{}\t{}", r.lambda, r.data_loss, r.reg_cost, r.k0).unwrap();
    }
    out
}

/// `n` values from `hi` down to `lo`, evenly spaced in `log10`.
pub fn log_lambdas(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![hi];
    }
    let (a, b) = (hi.log10(), lo.log10());
    (0..n).map(|k| 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64)).collect()
}
