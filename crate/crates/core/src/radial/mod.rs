//! Radial complex fields on R^3 in the `w = r u` sine representation.

mod field;
mod grid;
mod norms;
mod transform;

pub use field::{RadialField, SpectralField};
pub use grid::RadialGrid;
pub use norms::{gradient_norm_sq, lp_power, norm, shell_mass, NormKind};
