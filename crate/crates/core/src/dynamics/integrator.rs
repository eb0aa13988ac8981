//! Symmetric splitting: exact free flow for `-Delta`, exact pointwise phase flow
//! for the cubic term, and RK4 for the finite-dimensional coupled part.
//!
//! One step of size `dt` is
//! `C(dt/4) K(dt/2) C(dt/4) | L(dt) | C(dt/4) K(dt/2) C(dt/4)`.

use num_complex::Complex64 as C64;

use super::model::{energy, mass, z_velocity, ModelConfig, SystemState};
use super::trajectory::{Checkpoint, Trajectory};
use crate::error::{Error, Result};
use crate::radial::{lp_power, shell_mass, RadialField};

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn cubic_phase(xi: &mut RadialField, tau: f64) {
    for v in xi.values_mut() {
        *v *= C64::from_polar(1.0, -v.norm_sqr() * tau);
    }
}

/// `xi' = -i |z|^2 z G`, `z' = -i (z + z^2 A/2 + |z|^2 conj(A))` with `A = (G|xi)`.
///
/// Along this flow `xi = xi_0 + alpha G`, so only `(alpha, z)` is integrated.
fn coupled_substep(xi: &mut RadialField, z: &mut C64, tau: f64, config: &ModelConfig) {
    let g = config.coupling.field();
    let g2 = config.coupling.norm_sq();
    let a0 = g.inner_unchecked(xi);
    let f = |alpha: C64, z: C64| -> (C64, C64) {
        let a = a0 + alpha.conj() * g2;
        (-I * z * z.norm_sqr(), z_velocity(z, a))
    };
    let (al, zz) = (C64::new(0.0, 0.0), *z);
    let (k1a, k1z) = f(al, zz);
    let (k2a, k2z) = f(al + k1a * (tau / 2.0), zz + k1z * (tau / 2.0));
    let (k3a, k3z) = f(al + k2a * (tau / 2.0), zz + k2z * (tau / 2.0));
    let (k4a, k4z) = f(al + k3a * tau, zz + k3z * tau);
    let alpha = (k1a + 2.0 * k2a + 2.0 * k3a + k4a) * (tau / 6.0);
    *z += (k1z + 2.0 * k2z + 2.0 * k3z + k4z) * (tau / 6.0);
    if alpha != C64::new(0.0, 0.0) {
        let g = g.values();
        for (v, gk) in xi.values_mut().iter_mut().zip(g) {
            *v += alpha * gk;
        }
    }
}

fn half_nonlinear(xi: &mut RadialField, z: &mut C64, dt: f64, config: &ModelConfig) {
    if config.cubic_on {
        cubic_phase(xi, dt / 4.0);
    }
    coupled_substep(xi, z, dt / 2.0, config);
    if config.cubic_on {
        cubic_phase(xi, dt / 4.0);
    }
}

/// One symmetric step. A negative `dt` runs the same composition backwards.
pub fn step(state: &SystemState, dt: f64, config: &ModelConfig) -> Result<SystemState> {
    if !(dt.is_finite() && dt != 0.0) {
        return Err(Error::InvalidArgument(format!("step size must be finite and nonzero, got {dt}")));
    }
    config.grid().ensure_same(state.xi.grid())?;
    let mut xi = state.xi.clone();
    let mut z = state.z;
    half_nonlinear(&mut xi, &mut z, dt, config);
    let mut xi = xi.free_propagate(dt);
    half_nonlinear(&mut xi, &mut z, dt, config);
    let next = SystemState { xi, z, t: state.t + dt };
    if !next.is_finite() {
        return Err(Error::Aborted {
            t: next.t,
            last_good: state.t,
            reason: "non-finite state".into(),
        });
    }
    Ok(next)
}

pub(crate) fn checkpoint(state: &SystemState, config: &ModelConfig, m0: f64, keep_field: bool) -> Checkpoint {
    let g = config.coupling.field();
    let r_shell = config.shell_fraction * config.grid().r_max();
    let outer = 0.5 * shell_mass(&state.xi, r_shell);
    Checkpoint {
        t: state.t,
        mass: mass(state),
        energy: energy(state, g).expect("grid checked"),
        z: state.z,
        g_xi: g.inner_unchecked(&state.xi),
        shell_mass: outer,
        shell_ok: outer <= config.shell_tol * m0.max(f64::MIN_POSITIVE),
        xi: keep_field.then(|| state.xi.clone()),
    }
}

/// Integrate to `t_end`, handing every checkpoint to `observer` as it is produced.
pub fn evolve_observed(
    init: &SystemState,
    config: &ModelConfig,
    mut observer: impl FnMut(&Checkpoint) -> Result<()>,
) -> Result<Trajectory> {
    config.validate()?;
    config.grid().ensure_same(init.xi.grid())?;
    if !init.is_finite() {
        return Err(Error::InvalidArgument("initial state is not finite".into()));
    }
    let (n_steps, dt) = config.schedule();
    let m0 = mass(init);
    let mut checkpoints = Vec::new();
    let first = checkpoint(init, config, m0, true);
    observer(&first)?;
    checkpoints.push(first);
    let mut state = init.clone();
    let mut last_good = state.t;
    let mut since_field = 0usize;
    for k in 1..=n_steps {
        state = step(&state, dt, config).map_err(|e| match e {
            Error::Aborted { t, reason, .. } => Error::Aborted { t, last_good, reason },
            other => other,
        })?;
        // index-based times, landing exactly on the horizon
        state.t = if k == n_steps {
            init.t + config.t_end
        } else {
            init.t + k as f64 * dt
        };
        if k % config.checkpoint_stride == 0 || k == n_steps {
            let l4 = lp_power(&state.xi, 4.0);
            if l4 > config.l4_ceiling {
                return Err(Error::Aborted {
                    t: state.t,
                    last_good,
                    reason: format!("||xi||_4^4 = {l4:e} exceeds ceiling {:e}", config.l4_ceiling),
                });
            }
            since_field += 1;
            let keep = since_field % config.field_stride == 0 || k == n_steps;
            let cp = checkpoint(&state, config, m0, keep);
            observer(&cp)?;
            checkpoints.push(cp);
            last_good = state.t;
        }
    }
    Ok(Trajectory::new(config.clone(), checkpoints))
}

pub fn evolve(init: &SystemState, config: &ModelConfig) -> Result<Trajectory> {
    evolve_observed(init, config, |_| Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::model::Coupling;
    use crate::radial::{norm, NormKind, RadialGrid};

    fn grid() -> RadialGrid {
        RadialGrid::new(511, 30.0).unwrap()
    }

    #[test]
    fn decoupled_oscillator_rotates() {
        let g = grid();
        let mut cfg = ModelConfig::new(Coupling::zero(&g), 0.01, 2.0).unwrap();
        cfg.cubic_on = false;
        let init = SystemState::new(RadialField::zeros(&g), C64::new(1.0, 0.0)).unwrap();
        let traj = evolve(&init, &cfg).unwrap();
        let last = traj.last();
        assert!((last.z - C64::from_polar(1.0, -2.0)).norm() < 1e-10);
        assert!(last.xi.as_ref().unwrap().values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn no_sources_means_free_flow() {
        let g = grid();
        let mut cfg = ModelConfig::new(Coupling::gaussian(&g, 1.0, 1.0).unwrap(), 0.05, 1.0).unwrap();
        cfg.cubic_on = false;
        let xi = RadialField::sample(&g, |r| (-r * r / 3.0).exp()).unwrap();
        let init = SystemState::new(xi.clone(), C64::default()).unwrap();
        let next = step(&init, 0.05, &cfg).unwrap();
        let free = xi.free_propagate(0.05);
        let d = norm(&(&next.xi - &free), NormKind::L2).unwrap();
        assert!(d < 1e-14, "{d}");
        assert_eq!(next.z, C64::default());
    }

    #[test]
    fn t_end_zero_gives_single_checkpoint() {
        let g = grid();
        let cfg = ModelConfig::new(Coupling::zero(&g), 0.01, 0.0).unwrap();
        let init = SystemState::new(RadialField::zeros(&g), C64::new(0.2, 0.0)).unwrap();
        let traj = evolve(&init, &cfg).unwrap();
        assert_eq!(traj.len(), 1);
    }

    #[test]
    fn forward_back_returns() {
        let g = grid();
        let cfg = ModelConfig::new(Coupling::gaussian(&g, 1.0, 1.0).unwrap(), 0.02, 1.0).unwrap();
        let xi = RadialField::sample(&g, |r| 0.5 * (-r * r / 2.0).exp()).unwrap();
        let init = SystemState::new(xi, C64::new(0.3, 0.1)).unwrap();
        let fwd = step(&init, 0.02, &cfg).unwrap();
        let back = step(&fwd, -0.02, &cfg).unwrap();
        let d = norm(&(&back.xi - &init.xi), NormKind::L2).unwrap() + (back.z - init.z).norm();
        assert!(d < 1e-8, "{d}");
    }

    #[test]
    fn l4_ceiling_aborts() {
        let g = grid();
        let mut cfg = ModelConfig::new(Coupling::zero(&g), 0.01, 0.1).unwrap();
        cfg.l4_ceiling = 1e-3;
        let xi = RadialField::sample(&g, |r| (-r * r / 2.0).exp()).unwrap();
        let init = SystemState::new(xi, C64::default()).unwrap();
        assert!(matches!(evolve(&init, &cfg), Err(Error::Aborted { .. })));
    }
}
