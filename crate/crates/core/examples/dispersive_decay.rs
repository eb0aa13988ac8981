//! Local decay of the free flow applied to the outgoing resolvent:
//! `||e^{it Delta} R_+(1) v||_{L^{2,-sigma}}` falls off like `<t>^{-3/2}`.

use nlsode::radial::{RadialField, RadialGrid};
use nlsode::resolvent::{dispersive_decay_probe, log_times, Taper};

fn main() -> nlsode::Result<()> {
    let grid = RadialGrid::new(8191, 400.0)?;
    let v = RadialField::sample(&grid, |r| (-r * r / 2.0).exp())?;
    let times = log_times(5.0, 80.0, 16);
    let report = dispersive_decay_probe(&v, 5.0, &times, Taper::default())?;
    for (t, s) in report.times.iter().zip(&report.samples) {
        println!("{t:>8.3} {s:>14.6e}");
    }
    match report.exponent {
        Some(p) => println!("fitted exponent {p:.4} (expected -1.5)"),
        None => println!("degenerate input"),
    }
    Ok(())
}
