//! Ridges and shallow ReLU networks on the Radon domain: ridge profiles and
//! their filtered Radon transforms, the kernel `h(x; t, xi)` of the
//! pseudoinverse of `Delta_R` in closed and definitional form, and the
//! extreme points `relu(xi^T x - t) + affine` of the unit ball.

mod error;
mod kernel;
mod network;
mod profile;
mod pseudo;

pub use error::RidgeError;
pub use kernel::{kernel_h, kernel_h_oracle, KernelOracle, MollifiedCorrections, DEFAULT_CORR_STEP, DEFAULT_CORR_T_MAX};
pub use network::{network_to_measure, ReLUNetwork, RidgeAtom};
pub use profile::{eval_ridge, ridge_filtered_radon, ridge_identity_check, Profile};
pub use pseudo::{extreme_point, pseudoinverse_apply, pseudoinverse_apply_atoms, ODD_TOL};
