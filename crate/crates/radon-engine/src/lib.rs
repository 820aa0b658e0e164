//! Forward and adjoint Radon transforms on a [`SphericalGrid`], the radial
//! ramp filter, analytic sinograms of isotropic profiles and Gaussian blobs,
//! and Dirac measures on the Radon domain.
//!
//! Fourier convention: `F f(w) = int f(t) exp(-i w t) dt`, inverse with
//! `1/(2 pi)`.
//!
//! [`SphericalGrid`]: hyperspherical_grid::SphericalGrid

pub mod bessel;
mod blob;
mod error;
mod field;
mod filter;
mod isotropic;
mod measure;
pub mod pgm;
mod project;
pub mod quad;

pub use blob::{d_eps, gaussian_blob_sinogram, rotation_to_e1, GaussianBlob};
pub use error::RadonError;
pub use field::EuclideanField;
pub use filter::{backproject, fbp, radial_filter, ramp_constant, RadialFilterSpec, Taper};
pub use isotropic::{hankel_profile, radon_isotropic, HankelProfile, IsoOptions, IsotropicSinogram};
pub use measure::{backproject_measure_weak, canonicalize, measure_norm_witness, DiracAtom, DiracAtomList, Witness};
pub use project::{fourier_slice_check, line_integral, radon_numeric};
