//! Command-line driver for the sinogram, identity-suite, fitting and
//! invariance runs, plus the library pieces the `rtv` binary is built from.

pub mod commands;
pub mod config;
mod error;
pub mod suites;

pub use commands::{run, write_manifest, Outcome, Peak, MANIFEST};
pub use config::{parse_settings, RunConfig, Settings, Suite, SweepSpec, Task, KEYS};
pub use error::CliError;
pub use suites::{run_suite, Check, CheckReport, Relation};
