//! Experiment dispatcher behind the command-line tool.
//!
//! Every run writes `config.echo` and `summary.rec` into the output directory;
//! dynamical runs add `trajectory.ndrec`, `fields.bin`, `fgr.rec` and one CSV per
//! diagnostic.

use std::path::{Path, PathBuf};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::diagnostics::{
    damping_monitor, envelope_fit, reduced_envelope, scattering_defect, virial_monitor, write_summary, z_power_monitor,
    SummaryRecord, Table,
};
use crate::dynamics::io::TrajectoryWriter;
use crate::dynamics::{evolve_observed, ModelConfig, Trajectory};
use crate::error::{Error, Result};
use crate::resolvent::{dispersive_decay_probe, log_times, FgrReport, Taper};
use crate::standing_wave::{omega_fixed_point, standing_wave_residual_observed};

pub const ECHO_FILE: &str = "config.echo";
pub const SUMMARY_FILE: &str = "summary.rec";
pub const FGR_FILE: &str = "fgr.rec";

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub kind: ExperimentKind,
    pub out_dir: PathBuf,
    pub records: Vec<SummaryRecord>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

/// Evolve from the configured initial state, streaming checkpoints to disk.
fn simulate(cfg: &ExperimentConfig, model: &ModelConfig, out: &Path) -> Result<Trajectory> {
    let init = cfg.initial_state(model.grid())?;
    let mut writer = TrajectoryWriter::create(out)?;
    let mut cps = Vec::new();
    let res = evolve_observed(&init, model, |cp| {
        writer.append(cp)?;
        cps.push(cp.clone());
        Ok(())
    });
    writer.finish()?;
    res?;
    Ok(Trajectory::new(model.clone(), cps))
}

fn write_fgr(out: &Path, fgr: &FgrReport) -> Result<()> {
    std::fs::write(out.join(FGR_FILE), fgr.to_record())?;
    Ok(())
}

/// Run one experiment. Configuration problems surface as `Error::Config` before
/// anything is written beyond the output directory itself.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<RunOutcome> {
    let kind = cfg.kind()?;
    cfg.validate()?;
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join(ECHO_FILE), cfg.echo())?;

    let grid = cfg.grid()?;
    let coupling = cfg.coupling(&grid)?;
    let mut records = Vec::new();

    match kind {
        ExperimentKind::Fgr => {
            let fgr = coupling.fgr(cfg.fgr_shell())?;
            write_fgr(out, &fgr)?;
            records.push(SummaryRecord::at_most("gamma_route_agreement", fgr.agreement(), cfg.fgr.agreement_tol));
            records.push(SummaryRecord::above("fgr_min_abs_on_shell", fgr.min_abs_on_shell, cfg.fgr.tol));
        }
        ExperimentKind::DecayProbe => {
            let d = &cfg.decay;
            let times = log_times(d.t_min, d.t_max, d.samples);
            let taper = Taper {
                inner: d.taper_inner,
                outer: d.taper_outer,
            };
            let report = dispersive_decay_probe(coupling.field(), d.sigma, &times, taper)?;
            let mut t = Table::new(&["t", "weighted_norm"]);
            for (a, b) in report.times.iter().zip(&report.samples) {
                t.push(vec![*a, *b]);
            }
            t.write(&out.join("decay.csv"))?;
            let stat = report.exponent.map_or(f64::INFINITY, |e| (e - d.exponent).abs());
            records.push(SummaryRecord::at_most("decay_exponent_offset", stat, d.exponent_tol));
        }
        ExperimentKind::StandingWave => {
            let sw = &cfg.standing_wave;
            let model = cfg.model(coupling.clone())?;
            write_fgr(out, &model.fgr)?;
            let params = omega_fixed_point(sw.epsilon, &coupling, cfg.fgr_shell())?;
            params.write(out)?;
            let mut writer = TrajectoryWriter::create(out)?;
            let mut table = Table::new(&["t", "z_abs", "mass"]);
            let res = standing_wave_residual_observed(&params, cfg.run.t_end, &model, |cp| {
                table.push(vec![cp.t, cp.z.norm(), cp.mass]);
                writer.append(cp)
            });
            writer.finish()?;
            let report = res?;
            table.write(&out.join("standing_wave.csv"))?;
            records.push(SummaryRecord::at_most(
                "fixed_point_residual",
                report.fixed_point_residual,
                sw.fixed_point_tol,
            ));
            records.push(SummaryRecord::at_most("rhs_residual", report.rhs_residual, sw.rhs_tol));
            records.push(SummaryRecord::at_most("evolution_error", report.evolution_error, sw.evolution_tol));
            records.push(SummaryRecord::at_most("z_modulus_deviation", report.z_modulus_deviation, sw.modulus_tol));
        }
        ExperimentKind::Simulate
        | ExperimentKind::ScatterReport
        | ExperimentKind::Virial
        | ExperimentKind::Damping => {
            let model = cfg.model(coupling)?;
            write_fgr(out, &model.fgr)?;
            let traj = simulate(cfg, &model, out)?;
            records.extend(dynamical(kind, cfg, &traj, out)?);
        }
    }
    write_summary(&out.join(SUMMARY_FILE), &records)?;
    Ok(RunOutcome {
        kind,
        out_dir: out.to_path_buf(),
        records,
    })
}

fn dynamical(kind: ExperimentKind, cfg: &ExperimentConfig, traj: &Trajectory, out: &Path) -> Result<Vec<SummaryRecord>> {
    let mut records = Vec::new();
    match kind {
        ExperimentKind::Simulate => {
            records.push(SummaryRecord::at_most("mass_drift", traj.max_mass_drift(), cfg.run.mass_tol));
            records.push(SummaryRecord::at_most("energy_drift", traj.max_energy_drift(), cfg.run.energy_tol));
            let flagged = traj.checkpoints().iter().filter(|c| !c.shell_ok).count();
            records.push(SummaryRecord::at_most("shell_flags", flagged as f64, 0.0));
        }
        ExperimentKind::ScatterReport => {
            let report = scattering_defect(traj, cfg.scatter.tolerance)?;
            report.table().write(&out.join("scatter.csv"))?;
            records.push(SummaryRecord::at_most("scattering", report.statistic(), cfg.scatter.tolerance));
        }
        ExperimentKind::Virial => {
            let series = virial_monitor(traj, cfg.virial.radius)?;
            series.table().write(&out.join("virial.csv"))?;
            records.push(SummaryRecord::at_most("virial_residual", series.summary(), cfg.virial.tolerance));
        }
        ExperimentKind::Damping => {
            let fgr = &traj.config().fgr;
            let d = &cfg.damping;
            let series = damping_monitor(traj, fgr)?;
            series.table().write(&out.join("damping.csv"))?;
            let power = z_power_monitor(traj, fgr)?;
            power.table().write(&out.join("z_power.csv"))?;
            let fit = envelope_fit(traj, fgr.gamma)?;
            let y0 = traj.first().z.norm_sqr();
            let mut env = Table::new(&["t", "z_abs", "envelope"]);
            for c in traj.checkpoints() {
                env.push(vec![c.t, c.z.norm(), reduced_envelope(y0, fgr.gamma, c.t).sqrt()]);
            }
            env.write(&out.join("envelope.csv"))?;
            records.push(SummaryRecord::at_most("damping_identity", series.summary(), d.tolerance));
            records.push(SummaryRecord::at_most("z_power_identity", power.summary(), d.tolerance));
            records.push(SummaryRecord::at_most("envelope_deviation", fit.max_rel_deviation, d.envelope_tol));
            records.push(SummaryRecord::at_most("late_slope_offset", (fit.late_slope - d.slope).abs(), d.slope_tol));
        }
        other => return Err(Error::InvalidArgument(format!("`{other}` is not a trajectory experiment"))),
    }
    Ok(records)
}
