use super::table::Table;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::radial::{RadialField, SpectralField};

/// `e^{-it Delta} xi(t)` for a checkpoint with a stored field.
pub fn pullback(traj: &Trajectory, t: f64) -> Result<RadialField> {
    Ok(traj.field_at(t)?.free_propagate(-t))
}

pub(crate) fn pullback_spectral(t: f64, xi: &RadialField) -> SpectralField {
    xi.to_spectral().free_propagate(-t)
}

#[derive(Clone, Debug)]
pub struct ScatterReport {
    /// Field-checkpoint times.
    pub times: Vec<f64>,
    /// Pulled-back profiles at those times.
    pub profiles: Vec<RadialField>,
    /// `cauchy_defect[i] = max_{j,k >= i} ||phi_j - phi_k||_{H1}`.
    pub cauchy_defect: Vec<f64>,
    /// `z_sup_tail[i] = max |z(t)|` over all checkpoints with `t >= times[i]`.
    pub z_sup_tail: Vec<f64>,
    pub tolerance: f64,
    pub verdict: bool,
}

impl ScatterReport {
    fn index_at(&self, t: f64) -> usize {
        self.times
            .iter()
            .position(|&s| s >= t - 1e-12 * t.abs().max(1.0))
            .unwrap_or(self.times.len() - 1)
    }

    /// Defect over field checkpoints at or after `t`.
    pub fn cauchy_defect_at(&self, t: f64) -> f64 {
        self.cauchy_defect[self.index_at(t)]
    }

    pub fn z_sup_tail_at(&self, t: f64) -> f64 {
        self.z_sup_tail[self.index_at(t)]
    }

    /// `cauchy_defect + z_sup_tail` at half the final time.
    pub fn statistic(&self) -> f64 {
        let half = 0.5 * self.times[self.times.len() - 1];
        self.cauchy_defect_at(half) + self.z_sup_tail_at(half)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["t", "cauchy_defect", "z_sup_tail"]);
        for i in 0..self.times.len() {
            t.push(vec![self.times[i], self.cauchy_defect[i], self.z_sup_tail[i]]);
        }
        t
    }
}

pub fn scattering_defect(traj: &Trajectory, tolerance: f64) -> Result<ScatterReport> {
    let fields: Vec<(f64, &RadialField)> = traj.field_checkpoints().collect();
    if fields.len() < 4 {
        return Err(Error::Insufficient(format!(
            "scattering detector needs >= 4 field checkpoints, got {}",
            fields.len()
        )));
    }
    let spectral: Vec<SpectralField> = fields.iter().map(|(t, xi)| pullback_spectral(*t, xi)).collect();
    let m = spectral.len();
    let grid = traj.config().grid().clone();
    let weights: Vec<f64> = grid.frequencies().iter().map(|r| 1.0 + r * r).collect();
    let scale = grid.plancherel();
    // pairwise H1 distances; row maxima over j > i then suffix maxima
    let mut defect = vec![0.0; m];
    for i in (0..m).rev() {
        let mut best: f64 = 0.0;
        for j in i + 1..m {
            let s: f64 = spectral[i]
                .coeffs()
                .iter()
                .zip(spectral[j].coeffs())
                .zip(&weights)
                .map(|((a, b), w)| w * (a - b).norm_sqr())
                .sum();
            best = best.max((scale * s).sqrt());
        }
        defect[i] = if i + 1 < m { best.max(defect[i + 1]) } else { 0.0 };
    }
    let cps = traj.checkpoints();
    let z_tail: Vec<f64> = fields
        .iter()
        .map(|(t, _)| {
            cps.iter()
                .filter(|c| c.t >= *t)
                .map(|c| c.z.norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let profiles = fields
        .iter()
        .zip(&spectral)
        .map(|(_, s)| s.to_field())
        .collect();
    let mut report = ScatterReport {
        times: fields.iter().map(|(t, _)| *t).collect(),
        profiles,
        cauchy_defect: defect,
        z_sup_tail: z_tail,
        tolerance,
        verdict: false,
    };
    report.verdict = report.statistic() < tolerance;
    Ok(report)
}
