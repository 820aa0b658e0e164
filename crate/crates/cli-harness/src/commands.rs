use std::fs;
use std::path::Path;

use radon_engine::{gaussian_blob_sinogram, pgm};
use serde::Serialize;
use serde_json::{json, Value};
use variational_learner::{
    build_dictionary, fit, invariance_experiment, lambda_sweep, log_lambdas, sweep_tsv, Dataset, Dictionary, LearnError,
};

use crate::config::{RunConfig, SweepSpec, Task};
use crate::error::run_err;
use crate::suites::run_suite;
use crate::CliError;

pub const MANIFEST: &str = "manifest.json";

/// What a command leaves behind besides its files.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Human-readable summary for stdout.
    pub summary: String,
    pub results: Value,
}

/// Runs `cfg` and writes its outputs and manifest into `cfg.out`.
///
/// A failed check still writes its report and manifest before returning
/// [`CliError::CheckFailed`].
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    fs::create_dir_all(&cfg.out)?;
    let (outcome, failure) = match &cfg.task {
        Task::Sinogram { eps, x0 } => (cmd_sinogram(cfg, eps, x0)?, None),
        Task::Check { .. } => cmd_check(cfg)?,
        Task::Fit { data, sweep, atoms } => (cmd_fit(cfg, data, sweep.as_ref(), atoms)?, None),
        Task::Invariance { data, scale, angle_deg, shift, atoms } => {
            (cmd_invariance(cfg, data, *scale, *angle_deg, shift, atoms)?, None)
        }
    };
    write_manifest(cfg, &outcome.results)?;
    match failure {
        Some(msg) => Err(CliError::CheckFailed(msg)),
        None => Ok(outcome),
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    results: &'a Value,
}

pub fn write_manifest(cfg: &RunConfig, results: &Value) -> Result<(), CliError> {
    let m = Manifest { tool: "rtv", version: env!("CARGO_PKG_VERSION"), config: cfg, results };
    let text = serde_json::to_string_pretty(&m).map_err(run_err)?;
    fs::write(cfg.out.join(MANIFEST), text + "\n")?;
    Ok(())
}

/// Peak of one sinogram image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Peak {
    pub eps: f64,
    pub file: String,
    pub i: usize,
    pub j: usize,
    pub t: f64,
    pub theta: f64,
    pub value: f64,
    pub scale_min: f64,
    pub scale_max: f64,
}

fn cmd_sinogram(cfg: &RunConfig, eps_list: &[f64], x0: &[f64]) -> Result<Outcome, CliError> {
    let grid = cfg.grid()?;
    let mut peaks = Vec::new();
    for &eps in eps_list {
        let s = gaussian_blob_sinogram(eps, x0, &[1.0, 0.0, 0.0, 1.0]).map_err(run_err)?.sample(&grid).map_err(run_err)?;
        // First strict maximum in direction-major order.
        let (mut bi, mut bj, mut best) = (0, 0, f64::NEG_INFINITY);
        for j in 0..grid.n_dirs() {
            for i in 0..grid.n_t() {
                if s.get(i, j) > best {
                    (bi, bj, best) = (i, j, s.get(i, j));
                }
            }
        }
        let file = format!("sinogram_eps_{eps}.pgm");
        let scale = pgm::write(&s, &cfg.out.join(&file))?;
        let xi = grid.directions.dir(bj);
        peaks.push(Peak {
            eps,
            file,
            i: bi,
            j: bj,
            t: grid.radial.t(bi),
            theta: xi[1].atan2(xi[0]),
            value: best,
            scale_min: scale.min,
            scale_max: scale.max,
        });
    }
    let summary = peaks.iter().map(|p| format!("eps {}: peak {} at t = {}, theta = {}", p.eps, p.value, p.t, p.theta)).collect::<Vec<_>>().join("\n");
    Ok(Outcome { summary, results: json!({ "peaks": peaks }) })
}

fn cmd_check(cfg: &RunConfig) -> Result<(Outcome, Option<String>), CliError> {
    let Task::Check { suite } = cfg.task else { unreachable!("check task") };
    let report = run_suite(suite, cfg)?;
    let file = format!("check_{suite}.json");
    fs::write(cfg.out.join(&file), report.to_json() + "\n")?;
    let lines: Vec<String> = report
        .checks
        .iter()
        .map(|c| {
            let op = serde_json::to_value(c.relation).unwrap();
            format!("{} {}: {:e} {} {:e}", if c.pass { "PASS" } else { "FAIL" }, c.check, c.residual, op.as_str().unwrap(), c.tolerance)
        })
        .collect();
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    let failure =
        (failed > 0).then(|| format!("{failed} of {} checks in suite {suite} failed\n{}", report.checks.len(), lines.join("\n")));
    let results = json!({ "report": file, "pass": report.pass, "checks": report.checks.len(), "failed": failed });
    Ok((Outcome { summary: lines.join("\n"), results }, failure))
}

fn load(path: &Path) -> Result<Dataset, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Dataset::from_csv(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn learn_err(e: LearnError) -> CliError {
    match e {
        LearnError::NotConverged { iterations, residual } => {
            CliError::Run(format!("solver did not converge: {iterations} iterations, KKT residual {residual}"))
        }
        LearnError::Parameter(m) => CliError::Usage(m),
        other => CliError::Run(other.to_string()),
    }
}

/// Data-driven dictionary plus the extra `xi, tau` atoms.
fn dictionary(cfg: &RunConfig, data: &Dataset, extra: &[Vec<f64>]) -> Result<Dictionary, CliError> {
    let mut dict = build_dictionary(data, cfg.dict_dirs, cfg.dict_offsets).map_err(learn_err)?;
    for a in extra {
        if a.len() != data.d() + 1 {
            return Err(CliError::Usage(format!("atom {a:?} does not match d = {}", data.d())));
        }
        let (xi, tau) = a.split_at(data.d());
        let n = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(n > 0.0) {
            return Err(CliError::Usage(format!("atom {a:?} has no direction")));
        }
        let xi: Vec<f64> = xi.iter().map(|v| v / n).collect();
        dict.push(&xi, tau[0]).map_err(learn_err)?;
    }
    Ok(dict)
}

fn cmd_fit(cfg: &RunConfig, path: &Path, sweep: Option<&SweepSpec>, extra: &[Vec<f64>]) -> Result<Outcome, CliError> {
    let data = load(path)?;
    let dict = dictionary(cfg, &data, extra)?;
    let r = fit(&data, &dict, &cfg.fit).map_err(learn_err)?;
    fs::write(cfg.out.join("fit.json"), r.to_json() + "\n")?;
    let mut results = json!({
        "fit": "fit.json",
        "d": data.d(),
        "points": data.len(),
        "dictionary_size": dict.len(),
        "k0": r.k0,
        "reg_cost": r.reg_cost,
        "data_loss": r.data_loss,
        "objective": r.objective,
        "kkt_residual": r.kkt_residual,
        "iterations": r.iterations,
    });
    if let Some(s) = sweep {
        let rows = lambda_sweep(&data, &dict, &cfg.fit, &log_lambdas(s.lo, s.hi, s.n)).map_err(learn_err)?;
        fs::write(cfg.out.join("sweep.tsv"), sweep_tsv(&rows))?;
        results["sweep"] = json!("sweep.tsv");
    }
    let summary = format!("K0 {}\nreg_cost {}\nobjective {}", r.k0, r.reg_cost, r.objective);
    Ok(Outcome { summary, results })
}

fn cmd_invariance(
    cfg: &RunConfig,
    path: &Path,
    s: f64,
    angle_deg: f64,
    shift: &[f64],
    extra: &[Vec<f64>],
) -> Result<Outcome, CliError> {
    let data = load(path)?;
    if data.d() != 2 {
        return Err(CliError::Usage(format!("invariance needs planar data, got d = {}", data.d())));
    }
    let dict = dictionary(cfg, &data, extra)?;
    let (c, sn) = (angle_deg.to_radians().cos(), angle_deg.to_radians().sin());
    let report = invariance_experiment(&data, &dict, &cfg.fit, s, &[c, -sn, sn, c], shift).map_err(learn_err)?;
    fs::write(cfg.out.join("invariance.json"), serde_json::to_string_pretty(&report).map_err(run_err)? + "\n")?;
    let summary = format!(
        "objective gap {}\ntransported gap {}\ntransported back gap {}",
        report.objective_gap, report.transported_gap, report.transported_back_gap
    );
    let results = json!({
        "report": "invariance.json",
        "objective_gap": report.objective_gap,
        "transported_gap": report.transported_gap,
        "transported_back_gap": report.transported_back_gap,
        "reg_cost": report.reg_cost,
        "transported_reg_cost": report.transported_reg_cost,
    });
    Ok(Outcome { summary, results })
}
