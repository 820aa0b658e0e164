//! Sampling of the Radon domain `R x S^(d-1)`.
//!
//! A [`SphericalGrid`] is the product of a symmetric [`RadialGrid`] in the
//! offset variable `t` and a [`DirectionSet`] on the unit sphere. A
//! [`Sinogram`] stores samples `g(t_i, xi_j)` on such a grid, with `t` as the
//! fastest index.

mod directions;
mod error;
pub mod io;
mod radial;
mod sinogram;

pub use directions::{make_direction_set, sphere_area, DirectionSet};
pub use error::GridError;
pub use radial::RadialGrid;
pub use sinogram::{even_part, integrate, Sinogram, SinogramKind, SphericalGrid};
