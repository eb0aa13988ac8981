//! Localized virial identity.
//!
//! With `a(r) = R f(r/R)` and `V = Im int a conj(xi) d_r xi dx`, the flow gives
//!
//! ```text
//! dV/dt = 2 int f'(r/R) |d_r xi|^2 - (1 / 2R^2) int f_1(r/R) |xi|^2 + (1/2) int D(r/R) |xi|^4
//!         + 2 Re int a conj(h) d_r xi + Re int D(r/R) h conj(xi),        h = |z|^2 z G,
//! ```
//!
//! where `D = f' + 2 f / rho` and `f_1 = f''' + 4 f'' / rho`. The quartic term is
//! present only when the cubic nonlinearity is on.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::damping::derivative;
use super::table::Table;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::radial::RadialField;

/// `(f, f', f'', f''')` of the cutoff profile: `rho` on `[0, 1]`, `3/2` from 2 on,
/// and `1 + s - s^3 + s^4/2` (`s = rho - 1`) in between, which is C^2 with `0 <= f' <= 1`.
pub fn cutoff(rho: f64) -> (f64, f64, f64, f64) {
    if rho <= 1.0 {
        (rho, 1.0, 0.0, 0.0)
    } else if rho >= 2.0 {
        (1.5, 0.0, 0.0, 0.0)
    } else {
        let s = rho - 1.0;
        (
            1.0 + s - s.powi(3) + 0.5 * s.powi(4),
            1.0 - 3.0 * s * s + 2.0 * s.powi(3),
            -6.0 * s + 6.0 * s * s,
            -6.0 + 12.0 * s,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VirialSeries {
    pub times: Vec<f64>,
    pub functional: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub residual: Vec<f64>,
}

impl VirialSeries {
    /// `||residual||_1 / ||lhs||_1` over interior points.
    pub fn summary(&self) -> f64 {
        let n = self.times.len();
        let inner = 1..n.saturating_sub(1);
        let num: f64 = self.residual[inner.clone()].iter().map(|v| v.abs()).sum();
        let den: f64 = self.lhs[inner].iter().map(|v| v.abs()).sum();
        match (num == 0.0, den == 0.0) {
            (true, _) => 0.0,
            (false, true) => f64::INFINITY,
            _ => num / den,
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["t", "functional", "lhs", "rhs", "residual"]);
        for i in 0..self.times.len() {
            t.push(vec![
                self.times[i],
                self.functional[i],
                self.lhs[i],
                self.rhs[i],
                self.residual[i],
            ]);
        }
        t
    }
}

/// `(V, dV/dt predicted)` for one state.
pub fn virial_terms(xi: &RadialField, z: C64, g: &RadialField, r: f64, cubic_on: bool) -> (f64, f64) {
    let grid = xi.grid();
    let h = grid.h();
    let dxi = xi.radial_derivative();
    let forcing = z * z.norm_sqr();
    let mut v = 0.0;
    let mut rate = 0.0;
    for (k, &x) in grid.nodes().iter().enumerate() {
        let rho = x / r;
        let (f, f1, f2, f3) = cutoff(rho);
        let a = r * f;
        let d = f1 + 2.0 * f / rho;
        let lap_term = f3 + 4.0 * f2 / rho;
        let u = xi.values()[k];
        let du = dxi.values()[k];
        let hk = forcing * g.values()[k];
        let w = x * x;
        v += w * a * (u.conj() * du).im;
        let mut s = 2.0 * f1 * du.norm_sqr() - lap_term * u.norm_sqr() / (2.0 * r * r);
        if cubic_on {
            s += 0.5 * d * u.norm_sqr() * u.norm_sqr();
        }
        s += 2.0 * a * (hk.conj() * du).re + d * (hk * u.conj()).re;
        rate += w * s;
    }
    let scale = 4.0 * PI * h;
    (scale * v, scale * rate)
}

/// Virial functional per stored field and the residual of its time derivative.
/// Needs fields on consecutive checkpoints (field stride 1).
pub fn virial_monitor(traj: &Trajectory, r: f64) -> Result<VirialSeries> {
    let cfg = traj.config();
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("cutoff radius must be positive, got {r}")));
    }
    if 2.0 * r > cfg.grid().r_max() {
        return Err(Error::InvalidArgument(format!(
            "cutoff 2R = {} exceeds r_max = {}",
            2.0 * r,
            cfg.grid().r_max()
        )));
    }
    let cps = traj.checkpoints();
    if cps.iter().any(|c| c.xi.is_none()) {
        return Err(Error::Insufficient("virial monitor needs a field at every checkpoint".into()));
    }
    if cps.len() < 3 {
        return Err(Error::Insufficient("need at least 3 checkpoints".into()));
    }
    let g = cfg.coupling.field();
    let mut times = Vec::new();
    let mut functional = Vec::new();
    let mut rhs = Vec::new();
    for c in cps {
        let (v, rate) = virial_terms(c.xi.as_ref().unwrap(), c.z, g, r, cfg.cubic_on);
        times.push(c.t);
        functional.push(v);
        rhs.push(rate);
    }
    let lhs = derivative(&times, &functional);
    let residual = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    Ok(VirialSeries {
        times,
        functional,
        lhs,
        rhs,
        residual,
    })
}
