//! Localized virial identity along a free-ish Gaussian run: the finite-difference
//! rate of the functional against its predicted right-hand side.

use nlsode::diagnostics::virial_monitor;
use nlsode::dynamics::{evolve, Coupling, ModelConfig, SystemState};
use nlsode::radial::{RadialField, RadialGrid};
use nlsode::C64;

fn run(n: usize, dt: f64) -> nlsode::Result<f64> {
    let grid = RadialGrid::new(n, 200.0)?;
    let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0)?, dt, 10.0)?;
    cfg.checkpoint_stride = 5;
    cfg.field_stride = 1;
    let xi0 = RadialField::sample(&grid, |r| 0.3 * (-r * r / 8.0).exp())?;
    let traj = evolve(&SystemState::new(xi0, C64::new(0.0, 0.0))?, &cfg)?;
    let series = virial_monitor(&traj, 50.0)?;
    Ok(series.summary())
}

fn main() -> nlsode::Result<()> {
    for (n, dt) in [(2047, 0.02), (2047, 0.01), (4095, 0.005)] {
        println!("n = {n}, dt = {dt}: residual summary {:.3e}", run(n, dt)?);
    }
    Ok(())
}
