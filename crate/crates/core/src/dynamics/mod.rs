//! Time integration of the coupled field/oscillator system.

pub mod integrator;
pub mod io;
pub mod model;
pub mod trajectory;

pub use integrator::{evolve, evolve_observed, step};
pub use model::{energy, mass, rhs, Coupling, ModelConfig, SystemState};
pub use trajectory::{Checkpoint, Trajectory};
