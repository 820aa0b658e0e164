//! Learning with the total-variation seminorm `||Delta_R f||_M` as an
//! `l1`-penalized least-squares problem over a dictionary of ReLU ridges
//! with a free affine part.

mod data;
mod dictionary;
mod error;
mod fit;
mod similarity;
mod sweep;

pub use data::Dataset;
pub use dictionary::{build_dictionary, Dictionary};
pub use error::LearnError;
pub use fit::{fit, objective, FitConfig, FitResult, Loss, Solver};
pub use similarity::{invariance_experiment, similarity_transform, InvarianceReport};
pub use sweep::{lambda_sweep, log_lambdas, sweep_tsv, SweepRow};
