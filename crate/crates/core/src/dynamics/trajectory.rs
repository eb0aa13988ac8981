use num_complex::Complex64 as C64;

use super::model::{ModelConfig, SystemState};
use crate::error::{Error, Result};
use crate::radial::RadialField;

/// Scalars recorded at every checkpoint; the field itself only at the field stride.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub z: C64,
    /// `(G|xi)`.
    pub g_xi: C64,
    /// `||xi||^2 / 2` beyond `shell_fraction * r_max`.
    pub shell_mass: f64,
    pub shell_ok: bool,
    pub xi: Option<RadialField>,
}

impl Checkpoint {
    pub fn state(&self) -> Option<SystemState> {
        self.xi.as_ref().map(|xi| SystemState {
            xi: xi.clone(),
            z: self.z,
            t: self.t,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    config: ModelConfig,
    checkpoints: Vec<Checkpoint>,
}

impl Trajectory {
    /// Checkpoint times must be strictly increasing.
    pub fn new(config: ModelConfig, checkpoints: Vec<Checkpoint>) -> Self {
        debug_assert!(checkpoints.windows(2).all(|w| w[1].t > w[0].t));
        Self {
            config,
            checkpoints,
        }
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    pub fn first(&self) -> &Checkpoint {
        &self.checkpoints[0]
    }

    pub fn last(&self) -> &Checkpoint {
        &self.checkpoints[self.checkpoints.len() - 1]
    }

    pub fn times(&self) -> Vec<f64> {
        self.checkpoints.iter().map(|c| c.t).collect()
    }

    pub fn z_series(&self) -> Vec<C64> {
        self.checkpoints.iter().map(|c| c.z).collect()
    }

    /// Checkpoints carrying a stored field, in time order.
    pub fn field_checkpoints(&self) -> impl Iterator<Item = (f64, &RadialField)> {
        self.checkpoints
            .iter()
            .filter_map(|c| c.xi.as_ref().map(|xi| (c.t, xi)))
    }

    /// Field stored at time `t` (matched to within a relative 1e-12).
    pub fn field_at(&self, t: f64) -> Result<&RadialField> {
        let tol = 1e-12 * t.abs().max(1.0);
        self.checkpoints
            .iter()
            .find(|c| (c.t - t).abs() <= tol)
            .and_then(|c| c.xi.as_ref())
            .ok_or_else(|| Error::InvalidArgument(format!("no stored field at t = {t}")))
    }

    pub fn max_mass_drift(&self) -> f64 {
        let m0 = self.first().mass;
        self.checkpoints
            .iter()
            .map(|c| (c.mass - m0).abs() / m0.max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }

    pub fn max_energy_drift(&self) -> f64 {
        let e0 = self.first().energy;
        self.checkpoints
            .iter()
            .map(|c| (c.energy - e0).abs() / e0.abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }

    pub fn all_shell_ok(&self) -> bool {
        self.checkpoints.iter().all(|c| c.shell_ok)
    }
}
