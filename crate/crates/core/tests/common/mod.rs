//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nlsode::diagnostics::{damping_monitor, z_power_monitor};
use nlsode::dynamics::Trajectory;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// `int f` on [a, b], split geometrically around 1 at scale `eps`.
pub fn integrate(f: impl Fn(f64) -> f64, eps: f64, b: f64) -> f64 {
    let rule = legendre(24);
    let mut cuts = vec![0.0, 1.0];
    let mut d = eps;
    while d < 1.0 {
        cuts.push(1.0 - d);
        cuts.push(1.0 + d);
        d *= 2.0;
    }
    let mut x = 2.0;
    while x < b {
        cuts.push(x);
        x += 0.5;
    }
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut s = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        s += rule.iter().map(|(x, wt)| wt * f(m + h * x)).sum::<f64>() * h;
    }
    s
}

/// Neville extrapolation to `eps = 0` through `(eps_i, v_i)`.
pub fn extrapolate(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|q| q.1).collect();
    let x: Vec<f64> = points.iter().map(|q| q.0).collect();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        }
    }
    p[0]
}

/// `rho^2 |G^|^2` for `G = exp(-r^2/2)`.
pub fn gaussian_density(rho: f64) -> f64 {
    rho * rho * 8.0 * PI.powi(3) * (-rho * rho).exp()
}

/// `(Re, Im)` of `(1/2pi^2) int density / (rho^2 - 1 - i eps)` extrapolated to `eps = 0`.
pub fn eps_oracle(density: impl Fn(f64) -> f64 + Copy) -> (f64, f64) {
    let eps = [1e-2, 1e-3, 1e-4];
    let im: Vec<(f64, f64)> = eps
        .iter()
        .map(|&e| {
            let v = integrate(|r| density(r) * e / ((r * r - 1.0).powi(2) + e * e), e, 14.0);
            (e, v / (2.0 * PI * PI))
        })
        .collect();
    let re: Vec<(f64, f64)> = eps
        .iter()
        .map(|&e| {
            let v = integrate(
                |r| density(r) * (r * r - 1.0) / ((r * r - 1.0).powi(2) + e * e),
                e,
                14.0,
            );
            (e, v / (2.0 * PI * PI))
        })
        .collect();
    (extrapolate(&re), extrapolate(&im))
}

/// Largest violation of `|z_power - |z|^6 damping|` against the stencil bound, as a ratio;
/// `<= 1` means the degree-8 identity holds at every interior checkpoint.
///
/// The two laws differ only in the three-point difference `D` applied to `y^4/8`
/// versus `y^3 D(y/2)`; with weights `(a, b, c)` on `(y-, y, y+)` that difference is
/// `a (y-^4/8 - y^3 y-/2) + b (y^4/8 - y^4/2) + c (y+^4/8 - y^3 y+/2)`.
pub fn degree_eight_excess(traj: &Trajectory) -> f64 {
    let fgr = &traj.config().fgr;
    let d2 = damping_monitor(traj, fgr).unwrap();
    let d8 = z_power_monitor(traj, fgr).unwrap();
    let t = &d2.times;
    let y: Vec<f64> = traj.checkpoints().iter().map(|c| c.z.norm_sqr()).collect();
    let mut worst: f64 = 0.0;
    for i in 1..t.len() - 1 {
        let (hm, hp) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        let a = -hp / (hm * (hm + hp));
        let b = (hp - hm) / (hm * hp);
        let c = hm / (hp * (hm + hp));
        let w = y[i].powi(3);
        let split = |v: f64| v.powi(4) / 8.0 - w * v / 2.0;
        let stencil = a * split(y[i - 1]) + b * split(y[i]) + c * split(y[i + 1]);
        // the weights are only known to the rounding of the checkpoint times, about
        // ulp(t)/h^2 each, and they act on values of size |split| ~ 3/8 y^4
        let weight_err = 4.0 * f64::EPSILON * t[i + 1].abs() / (hm * hp);
        let floor = 3.0 * weight_err * 0.375 * y[i].powi(4) + 1e-14 * y[i].powi(4) / hm.min(hp);

        // the right sides are the same products up to rounding
        let ulps = |p: f64, q: f64| (p - q).abs() / (1e-15 * p.abs().max(q.abs())).max(f64::MIN_POSITIVE);
        worst = worst.max(ulps(d8.fgr_term[i], w * d2.fgr_term[i]));
        worst = worst.max(ulps(d8.remainder[i], w * d2.remainder[i]));
        let gap = (d8.residual[i] - w * d2.residual[i]).abs();
        worst = worst.max(gap / (stencil.abs() * (1.0 + 1e-6) + floor));
    }
    worst
}
