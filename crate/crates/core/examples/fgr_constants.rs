//! Resonance constants of two couplings: a Gaussian, which satisfies the
//! Fermi Golden Rule, and a frequency-space bump that vanishes on the unit sphere.

use nlsode::dynamics::Coupling;
use nlsode::radial::RadialGrid;
use nlsode::resolvent::{resolvent_apply, FrequencySampling, ResolventMode, ShellParams, SpectralShape};

fn main() -> nlsode::Result<()> {
    let grid = RadialGrid::new(4095, 200.0)?;
    let shell = ShellParams::default();

    let gauss = Coupling::gaussian(&grid, 1.0, 1.0)?;
    let fgr = gauss.fgr(shell)?;
    println!("gaussian: Gamma = {:.12}  (2 pi^2 / e = {:.12})", fgr.gamma, 2.0 * std::f64::consts::PI.powi(2) / 1f64.exp());
    println!("          beta  = {:.12} {:+.12}i", fgr.beta.re, fgr.beta.im);
    println!("          route agreement {:.2e}, FGR holds: {}", fgr.agreement(), fgr.fgr_holds);

    // pairing with the outgoing resolvent computed on the grid
    let w = resolvent_apply(gauss.field(), 0.0, ResolventMode::LimitingAbsorption)?;
    let pair = gauss.field().inner_product(&w)?;
    println!("          (G | R+(1) G) on the grid = {:.12} {:+.12}i", pair.re, pair.im);

    let bump = Coupling::spectral(
        &grid,
        SpectralShape::Bump {
            center: 2.0,
            half_width: 0.5,
            amplitude: 1.0,
        },
        FrequencySampling::default(),
    )?;
    let fgr = bump.fgr(shell)?;
    println!(
        "bump:     Gamma = {:.3e}, min |G^| on shell = {:.3e}, FGR holds: {}",
        fgr.gamma, fgr.min_abs_on_shell, fgr.fgr_holds
    );
    Ok(())
}
