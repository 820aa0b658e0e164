//! Polynomial calculus around the isotropic window `kappa_iso`: the dual
//! basis `m*_k = (-1)^|k| d^k kappa_iso` of the Taylor monomials
//! `m_k = x^k / k!`, the projector onto polynomials of degree `n0`, and the
//! moment conditions that characterize the range of the Radon transform.

mod basis;
mod coeffs;
mod error;
mod plane;
mod project;
mod range;
mod window;

pub use basis::{dual_at, dual_basis_eval, monomial, multi_indices, MAX_ORDER};
pub use coeffs::{PolyCoeffs, PolyEntry};
pub use error::PolyError;
pub use plane::{PlaneQuadrature, DEFAULT_EXTENT, TAIL_SHELL};
pub use project::{biorthogonality_matrix, pairings, project_poly, project_poly_with, Projection, TAIL_ERROR, TAIL_WARN};
pub use range::{moments, range_check, MomentFit, RangeReport, RangeTolerances};
pub use window::{
    bump, bump_mass, make_iso_window, IsotropicWindow, RadialValues, WindowSpec, DEFAULT_CACHE_EXTENT,
    DEFAULT_CACHE_STEP, DEFAULT_R0, DEFAULT_WIDTH,
};
