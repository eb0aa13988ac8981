//! Radiation-damping identities for the oscillator amplitude.
//!
//! Splitting `xi = Y + g` with `Y = -|z|^2 z R_+(1) G` gives `(G|Y) = -|z|^2 conj(z) beta`,
//! and the exact law
//!
//! ```text
//! (1/2) d/dt |z|^2 = -(Gamma/2) |z|^6 + Im( (1/2)|z|^2 z (G|g) + |z|^2 conj(z) conj((G|g)) )
//! ```
//!
//! whose degree-8 companion is the same identity multiplied by `|z|^6`.

use num_complex::Complex64 as C64;

use super::table::Table;
use crate::dynamics::{SystemState, Trajectory};
use crate::error::{Error, Result};
use crate::radial::RadialField;
use crate::resolvent::FgrReport;

/// `(Y, g)` with `Y = -|z|^2 z r_plus_g` and `g = xi - Y`.
pub fn g_decompose(state: &SystemState, r_plus_g: &RadialField) -> Result<(RadialField, RadialField)> {
    state.xi.grid().ensure_same(r_plus_g.grid())?;
    let y = r_plus_g.scaled(-state.z * state.z.norm_sqr());
    let g = &state.xi - &y;
    Ok((y, g))
}

/// `(G|g)` from the stored scalars alone.
pub fn g_pairing(g_xi: C64, z: C64, beta: C64) -> C64 {
    g_xi + z.conj() * z.norm_sqr() * beta
}

#[derive(Clone, Debug, PartialEq)]
pub struct DampingSeries {
    pub times: Vec<f64>,
    pub lhs: Vec<f64>,
    pub fgr_term: Vec<f64>,
    pub remainder: Vec<f64>,
    pub residual: Vec<f64>,
}

impl DampingSeries {
    fn assemble(times: Vec<f64>, lhs: Vec<f64>, fgr_term: Vec<f64>, remainder: Vec<f64>) -> Self {
        let residual = lhs
            .iter()
            .zip(&fgr_term)
            .zip(&remainder)
            .map(|((l, f), r)| l - f - r)
            .collect();
        Self {
            times,
            lhs,
            fgr_term,
            remainder,
            residual,
        }
    }

    /// `||residual||_1 / ||fgr_term||_1` over interior points; 0 when both vanish.
    pub fn summary(&self) -> f64 {
        let n = self.times.len();
        let inner = 1..n.saturating_sub(1);
        let num: f64 = self.residual[inner.clone()].iter().map(|v| v.abs()).sum();
        let den: f64 = self.fgr_term[inner].iter().map(|v| v.abs()).sum();
        if den == 0.0 {
            if num == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            num / den
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["t", "lhs", "fgr_term", "remainder", "residual"]);
        for i in 0..self.times.len() {
            t.push(vec![
                self.times[i],
                self.lhs[i],
                self.fgr_term[i],
                self.remainder[i],
                self.residual[i],
            ]);
        }
        t
    }
}

/// Second-order derivative on a nonuniform grid: centered three-point inside,
/// one-sided three-point at both ends.
pub fn derivative(t: &[f64], y: &[f64]) -> Vec<f64> {
    let n = t.len();
    let mut d = vec![0.0; n];
    if n < 3 {
        if n == 2 {
            let s = (y[1] - y[0]) / (t[1] - t[0]);
            d.fill(s);
        }
        return d;
    }
    let three = |x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64, at: f64| {
        // derivative of the quadratic interpolant at `at`
        y0 * (2.0 * at - x1 - x2) / ((x0 - x1) * (x0 - x2))
            + y1 * (2.0 * at - x0 - x2) / ((x1 - x0) * (x1 - x2))
            + y2 * (2.0 * at - x0 - x1) / ((x2 - x0) * (x2 - x1))
    };
    for i in 1..n - 1 {
        d[i] = three(t[i - 1], t[i], t[i + 1], y[i - 1], y[i], y[i + 1], t[i]);
    }
    d[0] = three(t[0], t[1], t[2], y[0], y[1], y[2], t[0]);
    d[n - 1] = three(t[n - 3], t[n - 2], t[n - 1], y[n - 3], y[n - 2], y[n - 1], t[n - 1]);
    d
}

pub const MAX_SPACING: f64 = 0.1;

fn check_density(traj: &Trajectory) -> Result<Vec<f64>> {
    let t = traj.times();
    if t.len() < 3 {
        return Err(Error::Insufficient("need at least 3 checkpoints".into()));
    }
    let widest = t.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    if widest > MAX_SPACING * (1.0 + 1e-9) {
        return Err(Error::Insufficient(format!(
            "checkpoint spacing {widest} exceeds {MAX_SPACING}"
        )));
    }
    Ok(t)
}

fn monitor(traj: &Trajectory, fgr: &FgrReport, degree: i32) -> Result<DampingSeries> {
    let t = check_density(traj)?;
    let cps = traj.checkpoints();
    // degree 2: (1/2) d|z|^2/dt; degree 8: (1/8) d|z|^8/dt
    let power: Vec<f64> = cps.iter().map(|c| c.z.norm_sqr().powi(degree / 2)).collect();
    let lhs: Vec<f64> = derivative(&t, &power)
        .into_iter()
        .map(|d| d / degree as f64)
        .collect();
    let mut fgr_term = Vec::with_capacity(t.len());
    let mut remainder = Vec::with_capacity(t.len());
    for c in cps {
        let r2 = c.z.norm_sqr();
        let weight = r2.powi(degree / 2 - 1);
        let g = g_pairing(c.g_xi, c.z, fgr.beta);
        fgr_term.push(-0.5 * fgr.gamma * r2.powi(3) * weight);
        remainder.push(weight * (0.5 * r2 * c.z * g + r2 * c.z.conj() * g.conj()).im);
    }
    Ok(DampingSeries::assemble(t, lhs, fgr_term, remainder))
}

pub fn damping_monitor(traj: &Trajectory, fgr: &FgrReport) -> Result<DampingSeries> {
    monitor(traj, fgr, 2)
}

/// Degree-8 law `(1/8) d/dt |z|^8 = |z|^6 x (right side of the degree-2 law)`.
pub fn z_power_monitor(traj: &Trajectory, fgr: &FgrReport) -> Result<DampingSeries> {
    monitor(traj, fgr, 8)
}

/// Closed-form solution of the reduced law `y' = -Gamma y^3` for `y = |z|^2`.
pub fn reduced_envelope(y0: f64, gamma: f64, t: f64) -> f64 {
    y0 / (1.0 + 2.0 * gamma * y0 * y0 * t).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeFit {
    /// `max |(|z|^2 - y) / y|` over the run.
    pub max_rel_deviation: f64,
    /// Slope of `ln|z|` against `ln(1 + 2 Gamma y0^2 t)` over the late window.
    pub late_slope: f64,
    /// Slope of `ln|z|` against `ln t` over the same window.
    pub raw_slope: f64,
}

/// Compare `|z(t)|^2` with the reduced envelope; the late window is the last half of the run.
pub fn envelope_fit(traj: &Trajectory, gamma: f64) -> Result<EnvelopeFit> {
    let cps = traj.checkpoints();
    let y0 = traj.first().z.norm_sqr();
    if y0 == 0.0 || cps.len() < 4 {
        return Err(Error::Insufficient("envelope fit needs z(0) != 0 and 4 checkpoints".into()));
    }
    let mut dev: f64 = 0.0;
    for c in cps {
        let y = reduced_envelope(y0, gamma, c.t - traj.first().t);
        dev = dev.max((c.z.norm_sqr() - y).abs() / y);
    }
    let t_half = 0.5 * (traj.first().t + traj.last().t);
    let late: Vec<&_> = cps.iter().filter(|c| c.t >= t_half && c.t > 0.0).collect();
    let ln_z: Vec<f64> = late.iter().map(|c| c.z.norm().ln()).collect();
    let x: Vec<f64> = late
        .iter()
        .map(|c| (1.0 + 2.0 * gamma * y0 * y0 * c.t).ln())
        .collect();
    let ln_t: Vec<f64> = late.iter().map(|c| c.t.ln()).collect();
    Ok(EnvelopeFit {
        max_rel_deviation: dev,
        late_slope: crate::quadrature::linear_fit(&x, &ln_z).0,
        raw_slope: crate::quadrature::linear_fit(&ln_t, &ln_z).0,
    })
}
