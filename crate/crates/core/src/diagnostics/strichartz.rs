//! Space-time functionals over checkpointed fields: the `L^4_t L^6_x` norm,
//! Duhamel integrals and the pair-supremum seminorm built on them.

use num_complex::Complex64 as C64;

use super::scatter::pullback_spectral;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::quadrature::trapezoid;
use crate::radial::{lp_power, RadialField, SpectralField};

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn time_tol(t: f64) -> f64 {
    1e-9 * t.abs().max(1.0)
}

/// Nominal spacing of stored fields.
fn field_spacing(traj: &Trajectory) -> f64 {
    let cfg = traj.config();
    let (_, dt) = cfg.schedule();
    (cfg.checkpoint_stride * cfg.field_stride) as f64 * dt
}

/// Field checkpoints in `[a, b]`, checking that no gap (including the ends)
/// exceeds twice the nominal field spacing.
fn covering(traj: &Trajectory, a: f64, b: f64) -> Result<Vec<(f64, &RadialField)>> {
    if !(b >= a) {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    let inside: Vec<(f64, &RadialField)> = traj
        .field_checkpoints()
        .filter(|(t, _)| *t >= a - time_tol(a) && *t <= b + time_tol(b))
        .collect();
    if inside.is_empty() {
        return Err(Error::Insufficient(format!("no stored fields in [{a}, {b}]")));
    }
    let limit = 2.0 * field_spacing(traj) + time_tol(b);
    let mut edges = vec![a];
    edges.extend(inside.iter().map(|(t, _)| *t));
    edges.push(b);
    if let Some(w) = edges.windows(2).find(|w| w[1] - w[0] > limit) {
        return Err(Error::Insufficient(format!(
            "coverage gap [{}, {}] exceeds {limit}",
            w[0], w[1]
        )));
    }
    Ok(inside)
}

/// `int ||u(t)||_{L6}^4 dt` by the trapezoid rule over the given samples.
pub fn st_power(times: &[f64], fields: &[RadialField]) -> f64 {
    let f: Vec<f64> = fields.iter().map(|u| lp_power(u, 6.0).powf(4.0 / 6.0)).collect();
    trapezoid(times, &f)
}

/// `(int_a^b ||xi(t)||_{L6}^4 dt)^{1/4}` over the stored fields in `[a, b]`.
pub fn strichartz_st(traj: &Trajectory, a: f64, b: f64) -> Result<f64> {
    let inside = covering(traj, a, b)?;
    let times: Vec<f64> = inside.iter().map(|(t, _)| *t).collect();
    let f: Vec<f64> = inside
        .iter()
        .map(|(_, u)| lp_power(u, 6.0).powf(4.0 / 6.0))
        .collect();
    Ok(trapezoid(&times, &f).powf(0.25))
}

/// `w0 = int_0^1 e^{i theta x}(1 - x) dx`, `w1 = int_0^1 e^{i theta x} x dx`.
fn filon_weights(theta: f64) -> (C64, C64) {
    if theta.abs() < 1.0 {
        let it = I * theta;
        let (mut total, mut w1) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        let mut term = C64::new(1.0, 0.0); // (i theta)^n / n!
        for n in 0..30 {
            total += term / (n + 1) as f64;
            w1 += term / (n + 2) as f64;
            term = term * it / (n + 1) as f64;
        }
        (total - w1, w1)
    } else {
        let e = C64::from_polar(1.0, theta);
        let total = (e - 1.0) / (I * theta);
        let w1 = e / (I * theta) + (e - 1.0) / (theta * theta);
        (total - w1, w1)
    }
}

#[derive(Clone, Debug)]
pub struct DuhamelIntegral {
    pub value: RadialField,
    /// Set when a single stored field forced a rectangle rule.
    pub low_accuracy: bool,
}

fn source(traj: &Trajectory, t: f64, xi: &RadialField) -> SpectralField {
    let cfg = traj.config();
    let z = traj
        .checkpoints()
        .iter()
        .find(|c| (c.t - t).abs() <= time_tol(t))
        .map(|c| c.z)
        .expect("field checkpoints carry z");
    let forcing = z * z.norm_sqr();
    let g = cfg.coupling.field();
    let f = if cfg.cubic_on {
        xi.map(|_, v| v * v.norm_sqr()).axpy(forcing, g)
    } else {
        g.scaled(forcing)
    };
    f.to_spectral()
}

/// `-i int_{t0}^{t1} e^{i(t1 - s)Delta} f(s) ds` with `f = |xi|^2 xi + |z|^2 z G`.
///
/// Each sine mode is integrated exactly against its phase with `f` linear between
/// stored fields. Both ends must be field checkpoints unless the interval holds a
/// single one, in which case a rectangle rule is used and flagged.
pub fn duhamel_accumulate(traj: &Trajectory, t0: f64, t1: f64) -> Result<DuhamelIntegral> {
    let inside = covering(traj, t0, t1)?;
    let grid = traj.config().grid().clone();
    let freqs = grid.frequencies();
    if inside.len() == 1 {
        let (s, xi) = inside[0];
        let f = source(traj, s, xi).free_propagate(t1 - s);
        let coeffs = f.coeffs().iter().map(|c| -I * c * (t1 - t0)).collect();
        return Ok(DuhamelIntegral {
            value: SpectralField::from_coeffs(&grid, coeffs)?.to_field(),
            low_accuracy: true,
        });
    }
    let (first, last) = (inside[0].0, inside[inside.len() - 1].0);
    if (first - t0).abs() > time_tol(t0) || (last - t1).abs() > time_tol(t1) {
        return Err(Error::InvalidArgument(format!(
            "Duhamel endpoints must be stored checkpoints (nearest: {first}, {last})"
        )));
    }
    let sources: Vec<SpectralField> = inside.iter().map(|(t, xi)| source(traj, *t, xi)).collect();
    let mut acc = vec![C64::new(0.0, 0.0); grid.n()];
    for w in 0..inside.len() - 1 {
        let (sa, sb) = (inside[w].0, inside[w + 1].0);
        let h = sb - sa;
        let (fa, fb) = (sources[w].coeffs(), sources[w + 1].coeffs());
        for k in 0..grid.n() {
            let omega = freqs[k] * freqs[k];
            let (w0, w1) = filon_weights(omega * h);
            // phase relative to t1 keeps the arguments bounded by omega (t1 - t0)
            let phase = C64::from_polar(1.0, -omega * (t1 - sa));
            acc[k] += phase * h * (fa[k] * w0 + fb[k] * w1);
        }
    }
    let coeffs = acc.into_iter().map(|c| -I * c).collect();
    Ok(DuhamelIntegral {
        value: SpectralField::from_coeffs(&grid, coeffs)?.to_field(),
        low_accuracy: false,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NakanishiValue {
    pub value: f64,
    /// Pair `(S, T)` attaining the supremum.
    pub argmax: (f64, f64),
    /// `st` norm of the maximizing difference over the last 10% of the horizon.
    pub tail: f64,
}

/// Pulled-back profiles on the stored fields in `[t0, horizon]`.
pub(crate) struct ProfileSet {
    pub times: Vec<f64>,
    pub phi: Vec<SpectralField>,
}

impl ProfileSet {
    pub fn new(traj: &Trajectory, t0: f64, horizon: f64) -> Result<Self> {
        let inside = covering(traj, t0, horizon)?;
        Ok(Self {
            times: inside.iter().map(|(t, _)| *t).collect(),
            phi: inside.iter().map(|(t, xi)| pullback_spectral(*t, xi)).collect(),
        })
    }

    /// `||e^{it Delta}(phi_{min(t, T)} - phi_S)||_{L6}^4` on every sample time `t`.
    fn difference_profile(&self, s: usize, t_idx: usize) -> Vec<f64> {
        let grid = self.phi[0].grid().clone();
        (0..self.times.len())
            .map(|k| {
                let a = &self.phi[k.min(t_idx)];
                let b = &self.phi[s];
                if k.min(t_idx) == s {
                    return 0.0;
                }
                let d: Vec<C64> = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x - y).collect();
                let u = SpectralField::from_coeffs(&grid, d)
                    .expect("same grid")
                    .free_propagate(self.times[k])
                    .to_field();
                lp_power(&u, 6.0).powf(4.0 / 6.0)
            })
            .collect()
    }
}

/// `sup_{T0 <= S <= T <= T1} ||u[T]_> - u[S]||_{st(T0, horizon)}` over stored checkpoints,
/// where `u[T]_>` follows the solution up to `T` and the free flow afterwards.
/// The diagonal `S = T` is included: it is the limit of the open supremum and
/// carries the `||u - u[T]||_{st(T0, T)}` part that subadditivity relies on.
pub fn nakanishi_seminorm(traj: &Trajectory, t0: f64, t1: f64, horizon: f64) -> Result<NakanishiValue> {
    if horizon <= t1 {
        return Err(Error::InvalidArgument(format!("horizon {horizon} must exceed T1 = {t1}")));
    }
    if t1 <= t0 {
        return Err(Error::InvalidArgument(format!("need T0 < T1, got {t0}, {t1}")));
    }
    let set = ProfileSet::new(traj, t0, horizon)?;
    let window: Vec<usize> = (0..set.times.len())
        .filter(|&k| set.times[k] <= t1 + time_tol(t1))
        .collect();
    let tail_start = horizon - 0.1 * (horizon - t0);
    let mut best = NakanishiValue {
        value: 0.0,
        argmax: (t0, t1),
        tail: 0.0,
    };
    let mut best_profile: Option<Vec<f64>> = None;
    for (i, &s) in window.iter().enumerate() {
        for &t in &window[i..] {
            let p = set.difference_profile(s, t);
            let v = trapezoid(&set.times, &p).powf(0.25);
            if v > best.value {
                best.value = v;
                best.argmax = (set.times[s], set.times[t]);
                best_profile = Some(p);
            }
        }
    }
    if let Some(p) = best_profile {
        let k0 = set.times.iter().position(|&t| t >= tail_start).unwrap_or(set.times.len() - 1);
        best.tail = trapezoid(&set.times[k0..], &p[k0..]).powf(0.25);
    }
    Ok(best)
}

/// `||u - u[T0]||_{st(T0, T1)}` and `||u[T1] - u[T0]||_{st(T1, horizon)}`.
pub fn nakanishi_lower_bound(traj: &Trajectory, t0: f64, t1: f64, horizon: f64) -> Result<(f64, f64)> {
    let set = ProfileSet::new(traj, t0, horizon)?;
    let k1 = set
        .times
        .iter()
        .position(|&t| t >= t1 - time_tol(t1))
        .ok_or_else(|| Error::Insufficient("T1 not stored".into()))?;
    let p = set.difference_profile(0, k1);
    let before = trapezoid(&set.times[..=k1], &p[..=k1]).powf(0.25);
    let after = trapezoid(&set.times[k1..], &p[k1..]).powf(0.25);
    Ok((before, after))
}
