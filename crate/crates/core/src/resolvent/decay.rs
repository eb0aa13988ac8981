use super::apply::{resolvent_apply, ResolventMode};
use crate::error::{Error, Result};
use crate::quadrature::{linear_fit, smooth_step};
use crate::radial::{norm, NormKind, RadialField};

/// Outgoing profile cutoff, as fractions of `r_max`: `R_+(1) v` is kept for
/// `r <= inner` and rolled off smoothly to zero at `r = outer`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Taper {
    pub inner: f64,
    pub outer: f64,
}

impl Default for Taper {
    fn default() -> Self {
        Self {
            inner: 0.5,
            outer: 0.8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayReport {
    /// Least-squares slope of `ln ||.||` against `ln <t>`; `None` when degenerate.
    pub exponent: Option<f64>,
    pub times: Vec<f64>,
    pub samples: Vec<f64>,
}

impl DecayReport {
    pub fn is_degenerate(&self) -> bool {
        self.exponent.is_none()
    }
}

/// `||e^{it Delta} R_+(1) v||_{L^{2,-sigma}}` on `t_grid`, with the outgoing
/// profile truncated by `taper` so that the box wall is not reached on the probe window.
pub fn dispersive_decay_probe(
    v: &RadialField,
    sigma: f64,
    t_grid: &[f64],
    taper: Taper,
) -> Result<DecayReport> {
    if t_grid.len() < 4 {
        return Err(Error::Insufficient(format!(
            "decay probe needs at least 4 times, got {}",
            t_grid.len()
        )));
    }
    if t_grid[0] < 0.0 || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("t_grid must be nonnegative and increasing".into()));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    if !(0.0 < taper.inner && taper.inner < taper.outer && taper.outer <= 1.0) {
        return Err(Error::InvalidArgument("taper needs 0 < inner < outer <= 1".into()));
    }
    let grid = v.grid();
    let r_max = grid.r_max();
    let w = resolvent_apply(v, 0.0, ResolventMode::LimitingAbsorption)?;
    let w = w.map(|r, u| {
        let x = (taper.outer * r_max - r) / ((taper.outer - taper.inner) * r_max);
        u * smooth_step(x)
    });
    let spectral = w.to_spectral();
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let u = spectral.clone().free_propagate(t).to_field();
        samples.push(norm(&u, NormKind::Weighted(-sigma))?);
    }
    let exponent = if samples.iter().all(|s| *s > 0.0) {
        let x: Vec<f64> = t_grid.iter().map(|t| (1.0 + t * t).sqrt().ln()).collect();
        let y: Vec<f64> = samples.iter().map(|s| s.ln()).collect();
        Some(linear_fit(&x, &y).0)
    } else {
        None
    };
    Ok(DecayReport {
        exponent,
        times: t_grid.to_vec(),
        samples,
    })
}

/// `n` logarithmically spaced times in `[t0, t1]`.
pub fn log_times(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let (a, b) = (t0.ln(), t1.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::RadialGrid;
    use num_complex::Complex64 as C64;

    fn grid() -> RadialGrid {
        RadialGrid::new(4095, 200.0).unwrap()
    }

    #[test]
    fn zero_input_is_degenerate() {
        let v = RadialField::zeros(&grid());
        let r = dispersive_decay_probe(&v, 5.0, &log_times(5.0, 80.0, 6), Taper::default()).unwrap();
        assert!(r.is_degenerate());
        assert!(r.samples.iter().all(|s| *s == 0.0));
    }

    #[test]
    fn short_grid_rejected() {
        let v = RadialField::zeros(&grid());
        assert!(matches!(
            dispersive_decay_probe(&v, 5.0, &[1.0, 2.0, 3.0], Taper::default()),
            Err(Error::Insufficient(_))
        ));
    }

    #[test]
    fn linear_in_input() {
        let g = grid();
        let v = RadialField::sample(&g, |r| (-r * r / 2.0).exp()).unwrap();
        let times = log_times(5.0, 80.0, 5);
        let a = dispersive_decay_probe(&v, 5.0, &times, Taper::default()).unwrap();
        let b = dispersive_decay_probe(&v.scaled(C64::new(2.0, 0.0)), 5.0, &times, Taper::default()).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert!((y - 2.0 * x).abs() < 1e-12 * y);
        }
        assert!((a.exponent.unwrap() - b.exponent.unwrap()).abs() < 1e-10);
    }
}
