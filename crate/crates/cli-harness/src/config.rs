use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hyperspherical_grid::{make_direction_set, RadialGrid, SphericalGrid};
use poly_calculus::{make_iso_window, IsotropicWindow, DEFAULT_R0, DEFAULT_WIDTH};
use serde::Serialize;
use variational_learner::{FitConfig, Solver};

use crate::CliError;

/// Raw `key = value` settings, from a config file and from flags.
pub type Settings = BTreeMap<String, String>;

/// Keys accepted in config files; flags write the same keys.
pub const KEYS: &[&str] = &[
    "d",
    "n_dirs",
    "n_t",
    "t_max",
    "r0",
    "mollifier_width",
    "lambda",
    "solver",
    "max_iter",
    "tol_kkt",
    "prune_threshold",
    "dict_dirs",
    "dict_offsets",
    "out",
    "seed",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_settings(text: &str) -> Result<Settings, CliError> {
    let mut out = Settings::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("config line {}: expected key = value", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(CliError::Parse(format!("config line {}: unknown key {k:?}", n + 1)));
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

/// Identity suites runnable by `check`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Fbp,
    Slice,
    Range,
    Kernel,
    MeasureNorm,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Fbp, Suite::Slice, Suite::Range, Suite::Kernel, Suite::MeasureNorm];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fbp => "fbp",
            Suite::Slice => "slice",
            Suite::Range => "range",
            Suite::Kernel => "kernel",
            Suite::MeasureNorm => "measure-norm",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Logarithmic lambda sweep from `hi` down to `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for SweepSpec {
    type Err = String;

    /// `lo:hi:n`, e.g. `1e-4:1:9`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("sweep {s:?} is not lo:hi:n");
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].parse().map_err(|_| bad())?;
        let n: usize = parts[2].parse().map_err(|_| bad())?;
        if !(lo > 0.0 && hi >= lo && hi.is_finite() && n >= 1) {
            return Err(format!("sweep needs 0 < lo <= hi and n >= 1, got {s:?}"));
        }
        Ok(SweepSpec { lo, hi, n })
    }
}

/// Parses a dictionary atom `xi_1,...,xi_d,tau`.
pub fn parse_atom(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| format!("atom {s:?}: {e}"))?;
    if v.len() < 2 {
        return Err(format!("atom {s:?} needs a direction and an offset"));
    }
    Ok(v)
}

/// Subcommand with its own parameters; `atoms` are appended to the dictionary.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Sinogram { eps: Vec<f64>, x0: Vec<f64> },
    Check { suite: Suite },
    Fit { data: PathBuf, sweep: Option<SweepSpec>, atoms: Vec<Vec<f64>> },
    Invariance { data: PathBuf, scale: f64, angle_deg: f64, shift: Vec<f64>, atoms: Vec<Vec<f64>> },
}

/// Fully resolved run configuration, echoed into every manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub task: Task,
    pub d: usize,
    pub n_dirs: usize,
    pub n_t: usize,
    pub t_max: f64,
    pub r0: f64,
    pub mollifier_width: f64,
    pub fit: FitConfig,
    pub dict_dirs: usize,
    pub dict_offsets: usize,
    pub out: PathBuf,
    pub seed: u64,
}

fn value<T: FromStr>(s: &Settings, key: &str, default: T) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    match s.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|e| CliError::Usage(format!("{key} = {v:?}: {e}"))),
    }
}

impl RunConfig {
    /// Applies `settings` over the defaults of `task` and validates the result.
    pub fn resolve(task: Task, settings: &Settings) -> Result<Self, CliError> {
        if let Some(k) = settings.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::Usage(format!("unknown setting {k:?}")));
        }
        // Figures use a grid with t = 2 on a node; the suites run at the FBP resolution.
        let (n_dirs, n_t, t_max) = match task {
            Task::Sinogram { .. } => (360, 401, 8.0),
            _ => (720, 1025, 10.0),
        };
        let lambda = value(settings, "lambda", 1e-3)?;
        let defaults = FitConfig::new(lambda);
        let solver: Solver = value(settings, "solver", defaults.solver)?;
        let cfg = RunConfig {
            task,
            d: value(settings, "d", 2)?,
            n_dirs: value(settings, "n_dirs", n_dirs)?,
            n_t: value(settings, "n_t", n_t)?,
            t_max: value(settings, "t_max", t_max)?,
            r0: value(settings, "r0", DEFAULT_R0)?,
            mollifier_width: value(settings, "mollifier_width", DEFAULT_WIDTH)?,
            fit: FitConfig {
                solver,
                max_iter: value(settings, "max_iter", defaults.max_iter)?,
                tol_kkt: value(settings, "tol_kkt", defaults.tol_kkt)?,
                prune_threshold: value(settings, "prune_threshold", defaults.prune_threshold)?,
                ..defaults
            },
            dict_dirs: value(settings, "dict_dirs", 32)?,
            dict_offsets: value(settings, "dict_offsets", 9)?,
            out: value(settings, "out", PathBuf::from("rtv-out"))?,
            seed: value(settings, "seed", 0)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(2..=3).contains(&self.d) {
            return usage(format!("d = {} must be 2 or 3", self.d));
        }
        if matches!(self.task, Task::Sinogram { .. } | Task::Check { .. } | Task::Invariance { .. }) && self.d != 2 {
            return usage(format!("this command runs in d = 2 only, got d = {}", self.d));
        }
        self.grid()?;
        self.window()?;
        let f = &self.fit;
        if !(f.lambda > 0.0 && f.lambda.is_finite()) {
            return usage(format!("lambda = {} must be positive", f.lambda));
        }
        if !(f.tol_kkt > 0.0 && f.prune_threshold >= 0.0 && f.max_iter > 0) {
            return usage("tol_kkt and max_iter must be positive, prune_threshold non-negative".into());
        }
        if self.dict_dirs == 0 || self.dict_offsets == 0 {
            return usage("dict_dirs and dict_offsets must be positive".into());
        }
        match &self.task {
            Task::Sinogram { eps, x0 } => {
                if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) {
                    return usage(format!("eps values must lie in (0, 1], got {eps:?}"));
                }
                if x0.len() != 2 || x0.iter().any(|v| !v.is_finite()) {
                    return usage(format!("x0 must be a finite point in the plane, got {x0:?}"));
                }
            }
            Task::Invariance { scale, angle_deg, shift, atoms, .. } => {
                if atoms.iter().any(|a| a.len() != 3) {
                    return usage("invariance atoms are xi_1,xi_2,tau".into());
                }
                if !(*scale > 0.0 && scale.is_finite() && angle_deg.is_finite()) {
                    return usage(format!("scale = {scale} must be positive and angle finite"));
                }
                if shift.len() != 2 || shift.iter().any(|v| !v.is_finite()) {
                    return usage(format!("shift must be a finite point in the plane, got {shift:?}"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Sampling grid from `n_dirs`, `n_t`, `t_max`.
    pub fn grid(&self) -> Result<SphericalGrid, CliError> {
        let radial = RadialGrid::new(self.t_max, self.n_t).map_err(|e| CliError::Usage(e.to_string()))?;
        let dirs = make_direction_set(self.d, self.n_dirs).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(SphericalGrid::new(radial, dirs))
    }

    pub fn window(&self) -> Result<IsotropicWindow, CliError> {
        make_iso_window(self.d, self.r0, self.mollifier_width).map_err(|e| CliError::Usage(e.to_string()))
    }
}
