//! Periodic solutions of the system without the cubic term when `G^` vanishes near
//! the unit sphere:
//!
//! ```text
//! xi = eps^3 e^{-i(1+omega)t} Phi,  z = eps e^{-i(1+omega)t},
//! Phi = -(-Delta - 1 - omega)^{-1} G,  omega = (3/2) eps^4 (G|Phi).
//! ```
//!
//! The minus sign on `Phi` is what the field equation `(1+omega) Phi = -Delta Phi + G` forces.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64 as C64;

use crate::dynamics::io::write_field;
use crate::dynamics::{evolve_observed, mass, rhs, Checkpoint, Coupling, ModelConfig, SystemState};
use crate::error::{Error, Result};
use crate::radial::{norm, NormKind, RadialField};
use crate::resolvent::{resolvent_apply, ResolventMode, ShellParams};

pub const OMEGA_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct StandingWaveParams {
    pub epsilon: f64,
    pub omega: f64,
    pub phi: RadialField,
    /// `(G|Phi)`.
    pub a: f64,
    pub iterations: usize,
}

fn solve(g: &RadialField, omega: f64, shell: ShellParams) -> Result<(RadialField, f64)> {
    let phi = resolvent_apply(
        g,
        omega,
        ResolventMode::Regular {
            delta: shell.delta,
            tol: shell.tol,
        },
    )?
    .scaled(C64::new(-1.0, 0.0));
    let a = g.inner_product(&phi)?.re;
    Ok((phi, a))
}

/// Iterate `omega <- -(3/2) eps^4 (G | R(1 + omega) G)` from zero until the update
/// drops below `OMEGA_TOL`.
pub fn omega_fixed_point(epsilon: f64, coupling: &Coupling, shell: ShellParams) -> Result<StandingWaveParams> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let g = coupling.field();
    let e4 = epsilon.powi(4);
    let mut omega = 0.0;
    let mut deltas: Vec<f64> = Vec::new();
    for it in 1..=MAX_ITERATIONS {
        let (_, a) = solve(g, omega, shell)?;
        let next = 1.5 * e4 * a;
        let d = (next - omega).abs();
        omega = next;
        deltas.push(d);
        if d <= OMEGA_TOL {
            let (phi, a) = solve(g, omega, shell)?;
            return Ok(StandingWaveParams {
                epsilon,
                omega,
                phi,
                a,
                iterations: it,
            });
        }
        if deltas.len() >= 4 && deltas[deltas.len() - 4..].windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::NoContraction {
                iterations: it,
                last_delta: d,
            });
        }
    }
    Err(Error::NoContraction {
        iterations: MAX_ITERATIONS,
        last_delta: *deltas.last().unwrap(),
    })
}

impl StandingWaveParams {
    /// `|omega - (3/2) eps^4 (G|Phi)|`.
    pub fn fixed_point_residual(&self) -> f64 {
        (self.omega - 1.5 * self.epsilon.powi(4) * self.a).abs()
    }

    /// `max |(-Delta - 1 - omega) Phi + G|`.
    pub fn inverse_residual(&self, g: &RadialField) -> f64 {
        let lhs = &self.phi.neg_laplacian() - &self.phi.scaled(C64::new(1.0 + self.omega, 0.0));
        (&lhs + g).values().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `|(1 + omega) eps - eps - (3/2) eps^5 (G|Phi)|`.
    pub fn balance_residual(&self) -> f64 {
        let e = self.epsilon;
        ((1.0 + self.omega) * e - e - 1.5 * e.powi(5) * self.a).abs()
    }

    pub fn to_record(&self) -> String {
        format!(
            "epsilon={}\nomega={}\na={}\niterations={}\n",
            self.epsilon, self.omega, self.a, self.iterations
        )
    }

    /// `standing_wave.rec` plus `phi.bin` holding the profile as one field block.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("standing_wave.rec"), self.to_record())?;
        let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join("phi.bin"))?);
        write_field(&mut f, &self.phi)?;
        f.flush()?;
        Ok(())
    }
}

pub fn standing_wave_state(params: &StandingWaveParams, t: f64) -> SystemState {
    let e = params.epsilon;
    let phase = C64::from_polar(1.0, -(1.0 + params.omega) * t);
    SystemState {
        xi: params.phi.scaled(phase * e.powi(3)),
        z: phase * e,
        t,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StandingWaveReport {
    /// `max_t ||xi - xi_exact||_{L2} + |z - z_exact|` over checkpoints.
    pub evolution_error: f64,
    /// `||rhs(state) + i(1+omega) state||` at `t = 0`.
    pub rhs_residual: f64,
    /// `max_t | |z(t)| - eps |`.
    pub z_modulus_deviation: f64,
    pub mass_drift: f64,
    pub fixed_point_residual: f64,
}

fn compare(
    params: &StandingWaveParams,
    config: &ModelConfig,
    horizon: f64,
    mut sink: impl FnMut(&Checkpoint) -> Result<()>,
) -> Result<StandingWaveReport> {
    if config.coupling.field().grid() != params.phi.grid() {
        return Err(Error::InvalidArgument("standing wave and config grids differ".into()));
    }
    let mut cfg = config.clone();
    cfg.t_end = horizon;
    let init = standing_wave_state(params, 0.0);
    let (dxi, dz) = rhs(&init, &cfg)?;
    let rot = C64::new(0.0, 1.0 + params.omega);
    let rxi = dxi.axpy(rot, &init.xi);
    let rhs_residual = norm(&rxi, NormKind::L2)? + (dz + rot * init.z).norm();
    let mut err: f64 = 0.0;
    let mut zdev: f64 = 0.0;
    let m0 = mass(&init);
    let mut mdrift: f64 = 0.0;
    evolve_observed(&init, &cfg, |cp| {
        let exact = standing_wave_state(params, cp.t);
        if let Some(xi) = &cp.xi {
            let e = norm(&(xi - &exact.xi), NormKind::L2)? + (cp.z - exact.z).norm();
            err = err.max(e);
        }
        zdev = zdev.max((cp.z.norm() - params.epsilon).abs());
        mdrift = mdrift.max((cp.mass - m0).abs() / m0.max(f64::MIN_POSITIVE));
        sink(cp)
    })?;
    Ok(StandingWaveReport {
        evolution_error: err,
        rhs_residual,
        z_modulus_deviation: zdev,
        mass_drift: mdrift,
        fixed_point_residual: params.fixed_point_residual(),
    })
}

/// Evolve the exact family with the cubic term off and measure the deviation.
pub fn standing_wave_residual(
    params: &StandingWaveParams,
    horizon: f64,
    config: &ModelConfig,
) -> Result<StandingWaveReport> {
    if config.cubic_on {
        return Err(Error::InvalidArgument(
            "standing-wave residual requires the cubic term to be off".into(),
        ));
    }
    compare(params, config, horizon, |_| Ok(()))
}

/// [`standing_wave_residual`] that also hands every checkpoint to `observer`.
pub fn standing_wave_residual_observed(
    params: &StandingWaveParams,
    horizon: f64,
    config: &ModelConfig,
    observer: impl FnMut(&Checkpoint) -> Result<()>,
) -> Result<StandingWaveReport> {
    if config.cubic_on {
        return Err(Error::InvalidArgument(
            "standing-wave residual requires the cubic term to be off".into(),
        ));
    }
    compare(params, config, horizon, observer)
}

/// Same comparison with whatever nonlinearity `config` selects; with the cubic term
/// on this quantifies how far the family is from stationary.
pub fn standing_wave_drift(params: &StandingWaveParams, horizon: f64, config: &ModelConfig) -> Result<StandingWaveReport> {
    compare(params, config, horizon, |_| Ok(()))
}
