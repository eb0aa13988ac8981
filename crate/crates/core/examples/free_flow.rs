//! Exact free propagation of a Gaussian and the conserved norms.
//!
//! The closed form is `(1 + 2it)^{-3/2} exp(-r^2 / (2 (1 + 2it)))` for
//! `u0 = exp(-r^2 / 2)` under `i u_t = -Delta u`.

use nlsode::radial::{gradient_norm_sq, norm, NormKind, RadialField, RadialGrid};
use nlsode::C64;

fn exact(r: f64, t: f64) -> C64 {
    let a = C64::new(1.0, 2.0 * t);
    a.powf(-1.5) * (-(r * r) / (2.0 * a)).exp()
}

fn main() -> nlsode::Result<()> {
    let grid = RadialGrid::new(4096, 100.0)?;
    let u0 = RadialField::sample(&grid, |r| (-r * r / 2.0).exp())?;
    println!("{:>6} {:>14} {:>14} {:>14}", "t", "L2 error", "||u||", "||grad u||^2");
    for t in [0.1, 0.5, 1.0, 2.0] {
        let u = u0.free_propagate(t);
        let e = RadialField::sample_complex(&grid, |r| exact(r, t))?;
        let err = norm(&(&u - &e), NormKind::L2)?;
        println!(
            "{t:>6.2} {err:>14.3e} {:>14.10} {:>14.10}",
            norm(&u, NormKind::L2)?,
            gradient_norm_sq(&u)
        );
    }
    Ok(())
}
