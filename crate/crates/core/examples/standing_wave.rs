//! The non-radiating family for a coupling whose transform vanishes near the
//! unit sphere, with the cubic term switched off. `|z|` stays at `eps`.

use nlsode::dynamics::{Coupling, ModelConfig};
use nlsode::radial::RadialGrid;
use nlsode::resolvent::{FrequencySampling, ShellParams, SpectralShape};
use nlsode::standing_wave::{omega_fixed_point, standing_wave_residual};

fn main() -> nlsode::Result<()> {
    let grid = RadialGrid::new(2047, 200.0)?;
    let shape = SpectralShape::Bump {
        center: 2.0,
        half_width: 0.5,
        amplitude: 1.0,
    };
    let coupling = Coupling::spectral(&grid, shape, FrequencySampling::default())?;
    let p = omega_fixed_point(0.1, &coupling, ShellParams::default())?;
    println!(
        "eps = {}, omega = {:.6e}, (G|Phi) = {:.6}, {} iterations",
        p.epsilon, p.omega, p.a, p.iterations
    );
    println!("fixed-point residual {:.2e}, inverse residual {:.2e}", p.fixed_point_residual(), p.inverse_residual(coupling.field()));

    for dt in [0.004, 0.002] {
        let mut cfg = ModelConfig::new(coupling.clone(), dt, 50.0)?;
        cfg.cubic_on = false;
        cfg.field_stride = 10;
        let r = standing_wave_residual(&p, 50.0, &cfg)?;
        println!(
            "dt = {dt}: evolution error {:.3e}, rhs residual {:.2e}, max | |z| - eps | {:.2e}",
            r.evolution_error, r.rhs_residual, r.z_modulus_deviation
        );
    }
    Ok(())
}
