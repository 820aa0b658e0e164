use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cli_harness::config::parse_atom;
use cli_harness::{parse_settings, run, CliError, RunConfig, Settings, Suite, SweepSpec, Task};

#[derive(Parser)]
#[command(name = "rtv", version, about = "Radon-domain sinograms, identity checks and ReLU network fits")]
struct Cli {
    /// Optional `key = value` file of defaults; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Number of directions on the circle.
    #[arg(long, global = true)]
    dirs: Option<usize>,
    /// Number of offsets on the radial grid.
    #[arg(long, global = true)]
    nt: Option<usize>,
    /// Largest offset of the radial grid.
    #[arg(long, global = true)]
    tmax: Option<f64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Window radius of the isotropic window.
    #[arg(long, global = true)]
    r0: Option<f64>,
    /// Mollifier width of the isotropic window.
    #[arg(long, global = true)]
    mollifier_width: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    lambda: Option<f64>,
    /// `fista` or `coordinate_descent`.
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    tol_kkt: Option<f64>,
    /// Dictionary directions on the half circle.
    #[arg(long)]
    dict_dirs: Option<usize>,
    /// Dictionary offsets per direction.
    #[arg(long)]
    dict_offsets: Option<usize>,
    /// Extra dictionary atom `xi_1,...,xi_d,tau`; repeatable.
    #[arg(long = "atom", allow_negative_numbers = true)]
    atoms: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Write one PGM image of the localized blob sinogram per eps.
    Sinogram {
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 0.5, 0.25, 0.125])]
        eps: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = vec![2.0, 2.0])]
        x0: Vec<f64>,
    },
    /// Run an identity suite and write a JSON report.
    Check {
        /// fbp, slice, range, kernel or measure-norm.
        suite: Suite,
    },
    /// Fit a ReLU network to a CSV dataset.
    Fit {
        #[arg(long)]
        data: PathBuf,
        /// Logarithmic lambda sweep `lo:hi:n`, written as a TSV.
        #[arg(long)]
        sweep: Option<SweepSpec>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Fit a dataset and its image under a similarity and compare the optima.
    Invariance {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        scale: f64,
        /// Rotation angle in degrees.
        #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = vec![1.0, -1.0])]
        shift: Vec<f64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn put<T: ToString>(s: &mut Settings, key: &str, v: Option<T>) {
    if let Some(v) = v {
        s.insert(key.to_string(), v.to_string());
    }
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let mut s = match &cli.config {
        Some(p) => parse_settings(
            &std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?,
        )?,
        None => Settings::new(),
    };
    put(&mut s, "n_dirs", cli.dirs);
    put(&mut s, "n_t", cli.nt);
    put(&mut s, "t_max", cli.tmax);
    put(&mut s, "out", cli.out.map(|p| p.display().to_string()));
    put(&mut s, "seed", cli.seed);
    put(&mut s, "r0", cli.r0);
    put(&mut s, "mollifier_width", cli.mollifier_width);
    let mut solver_flags = |a: SolverArgs| -> Result<Vec<Vec<f64>>, CliError> {
        put(&mut s, "lambda", a.lambda);
        put(&mut s, "solver", a.solver);
        put(&mut s, "max_iter", a.max_iter);
        put(&mut s, "tol_kkt", a.tol_kkt);
        put(&mut s, "dict_dirs", a.dict_dirs);
        put(&mut s, "dict_offsets", a.dict_offsets);
        a.atoms.iter().map(|v| parse_atom(v).map_err(CliError::Usage)).collect()
    };
    let task = match cli.command {
        Command::Sinogram { eps, x0 } => Task::Sinogram { eps, x0 },
        Command::Check { suite } => Task::Check { suite },
        Command::Fit { data, sweep, solver } => {
            let atoms = solver_flags(solver)?;
            Task::Fit { data, sweep, atoms }
        }
        Command::Invariance { data, scale, angle, shift, solver } => {
            let atoms = solver_flags(solver)?;
            Task::Invariance { data, scale, angle_deg: angle, shift, atoms }
        }
    };
    RunConfig::resolve(task, &s)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match resolve(cli).and_then(|cfg| run(&cfg)) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("rtv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
