//! Nakanishi's seminorm on a coupled trajectory: subadditivity over random
//! triples, the lower bound, and the value on a free solution.

use nlsode::diagnostics::{nakanishi_lower_bound, nakanishi_seminorm};
use nlsode::dynamics::{evolve, Coupling, ModelConfig, SystemState};
use nlsode::radial::{RadialField, RadialGrid};
use nlsode::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> nlsode::Result<()> {
    let grid = RadialGrid::new(1023, 100.0)?;
    let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0)?, 0.01, 6.0)?;
    cfg.checkpoint_stride = 10;
    cfg.field_stride = 2;
    let xi0 = RadialField::sample(&grid, |r| 0.5 * (-r * r / 4.0).exp())?;
    let traj = evolve(&SystemState::new(xi0.clone(), C64::new(0.3, 0.0))?, &cfg)?;
    let horizon = 6.0;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..20 {
        let mut t: Vec<f64> = (0..3).map(|_| (rng.gen_range(0.0..5.0) * 5.0f64).round() / 5.0).collect();
        t.sort_by(f64::total_cmp);
        if t[0] == t[1] || t[1] == t[2] {
            continue;
        }
        let whole = nakanishi_seminorm(&traj, t[0], t[2], horizon)?.value;
        let parts = nakanishi_seminorm(&traj, t[0], t[1], horizon)?.value + nakanishi_seminorm(&traj, t[1], t[2], horizon)?.value;
        worst = worst.max(whole - parts);
        println!("({:.1}, {:.1}, {:.1}): {whole:.6e} <= {parts:.6e}", t[0], t[1], t[2]);
    }
    println!("max violation of subadditivity: {worst:.3e}");

    let v = nakanishi_seminorm(&traj, 1.0, 4.0, horizon)?;
    let (before, after) = nakanishi_lower_bound(&traj, 1.0, 4.0, horizon)?;
    println!("value(1, 4) = {:.6e} >= max({before:.6e}, {after:.6e}), argmax {:?}", v.value, v.argmax);

    let mut free = ModelConfig::new(Coupling::zero(&grid), 0.01, 6.0)?;
    free.cubic_on = false;
    free.field_stride = 2;
    let ftraj = evolve(&SystemState::new(xi0, C64::new(0.0, 0.0))?, &free)?;
    println!("free solution: {:.3e}", nakanishi_seminorm(&ftraj, 0.0, 4.0, horizon)?.value);
    Ok(())
}
