//! Radiation damping of the oscillator: `|z(t)|` against the reduced envelope
//! `|z0| (1 + 2 Gamma |z0|^4 t)^{-1/4}`, plus the damping-identity residuals.
//!
//! `cargo run --release --example radiation_damping [t_end]` (default 100).
//! Runs past t ~ 200 need a larger box (r_max = 420, n = 8191 for t = 400).

use nlsode::diagnostics::{damping_monitor, envelope_fit, reduced_envelope, z_power_monitor};
use nlsode::dynamics::{evolve, Coupling, ModelConfig, SystemState};
use nlsode::radial::{RadialField, RadialGrid};
use nlsode::C64;

fn main() -> nlsode::Result<()> {
    let t_end: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100.0);
    let (n, r_max) = if t_end > 200.0 { (8191, 420.0) } else { (4095, 200.0) };
    let grid = RadialGrid::new(n, r_max)?;
    let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0)?, 0.01, t_end)?;
    cfg.field_stride = 100;
    let gamma = cfg.fgr.gamma;
    let z0 = 0.1;
    let init = SystemState::new(RadialField::zeros(&grid), C64::new(z0, 0.0))?;

    let clock = std::time::Instant::now();
    let traj = evolve(&init, &cfg)?;
    println!("n = {n}, r_max = {r_max}, Gamma = {gamma:.6}, {:.1?}", clock.elapsed());

    let stride = (traj.len() / 10).max(1);
    println!("{:>8} {:>10} {:>10} {:>12}", "t", "|z|", "envelope", "mass");
    for c in traj.checkpoints().iter().step_by(stride) {
        let env = reduced_envelope(z0 * z0, gamma, c.t).sqrt();
        println!("{:>8.1} {:>10.6} {:>10.6} {:>12.9}", c.t, c.z.norm(), env, c.mass);
    }

    let fit = envelope_fit(&traj, gamma)?;
    println!("max relative deviation of |z|^2 from envelope: {:.3e}", fit.max_rel_deviation);
    println!("late slope against ln(1 + 2 Gamma y0^2 t): {:.4} (reduced law: -0.25)", fit.late_slope);
    println!("damping identity residual (|z|^2 form): {:.3e}", damping_monitor(&traj, &cfg.fgr)?.summary());
    println!("damping identity residual (|z|^8 form): {:.3e}", z_power_monitor(&traj, &cfg.fgr)?.summary());
    println!("mass drift {:.2e}, energy drift {:.2e}", traj.max_mass_drift(), traj.max_energy_drift());
    Ok(())
}
