//! Numerical laboratory for a cubic Schrödinger field coupled to a single
//! oscillator through a radial Schwartz function `G`:
//!
//! ```text
//! i d/dt xi = -Delta xi + |xi|^2 xi + |z|^2 z G
//! i d/dt z  = z + (1/2) z^2 (G|xi) + |z|^2 conj((G|xi))
//! ```
//!
//! on radially symmetric data in R^3. The crate provides an exact spectral free
//! propagator, the resonance constants of the coupling (limiting-absorption
//! resolvent, damping rate), a splitting integrator that tracks mass and energy,
//! and trajectory diagnostics (damping laws, space-time norms, scattering and
//! virial monitors, the non-radiating standing-wave family).

pub mod config;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod quadrature;
pub mod radial;
pub mod resolvent;
pub mod run;
pub mod standing_wave;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
