//! Experiment configuration: a sectioned TOML file with scalar values only.
//!
//! Unknown keys are rejected. Overrides use `section.key=value`, where the value is
//! read as a TOML scalar and falls back to a bare string.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::io::read_field;
use crate::dynamics::{Coupling, ModelConfig, SystemState};
use crate::error::{Error, Result};
use crate::radial::{RadialField, RadialGrid, SpectralField};
use crate::resolvent::{FrequencySampling, ShellParams, SpectralShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Simulate,
    Fgr,
    StandingWave,
    ScatterReport,
    Virial,
    Damping,
    DecayProbe,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::Simulate,
        ExperimentKind::Fgr,
        ExperimentKind::StandingWave,
        ExperimentKind::ScatterReport,
        ExperimentKind::Virial,
        ExperimentKind::Damping,
        ExperimentKind::DecayProbe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Fgr => "fgr",
            ExperimentKind::StandingWave => "standing-wave",
            ExperimentKind::ScatterReport => "scatter-report",
            ExperimentKind::Virial => "virial",
            ExperimentKind::Damping => "damping",
            ExperimentKind::DecayProbe => "decay-probe",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config("kind", format!("unknown experiment kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub n: usize,
    pub r_max: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { n: 4096, r_max: 200.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingKind {
    Gaussian,
    SpectralBump,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CouplingSection {
    pub kind: CouplingKind,
    pub amplitude: f64,
    /// Gaussian width `w` in `exp(-r^2 / 2w^2)`.
    pub width: f64,
    pub center: f64,
    pub half_width: f64,
    pub rho_max: f64,
    pub refine: usize,
}

impl Default for CouplingSection {
    fn default() -> Self {
        Self {
            kind: CouplingKind::Gaussian,
            amplitude: 1.0,
            width: 1.0,
            center: 2.0,
            half_width: 0.5,
            rho_max: 16.0,
            refine: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiKind {
    Zero,
    Gaussian,
    File,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSection {
    pub xi: XiKind,
    pub xi_width: f64,
    pub xi_amplitude: f64,
    /// Single field block in the `fields.bin` layout.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_file: Option<PathBuf>,
    pub z_re: f64,
    pub z_im: f64,
    /// Seeded random perturbation of the low sine modes of `xi`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub perturbation: f64,
}

impl Default for InitialSection {
    fn default() -> Self {
        Self {
            xi: XiKind::Zero,
            xi_width: 1.0,
            xi_amplitude: 0.0,
            xi_file: None,
            z_re: 0.1,
            z_im: 0.0,
            seed: None,
            perturbation: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub dt: f64,
    pub t_end: f64,
    pub cubic_on: bool,
    pub checkpoint_stride: usize,
    pub field_stride: usize,
    pub l4_ceiling: f64,
    pub shell_fraction: f64,
    pub shell_tol: f64,
    pub mass_tol: f64,
    pub energy_tol: f64,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_end: 10.0,
            cubic_on: true,
            checkpoint_stride: 10,
            field_stride: 10,
            l4_ceiling: 1e6,
            shell_fraction: 0.9,
            shell_tol: 1e-4,
            mass_tol: 1e-6,
            energy_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FgrSection {
    pub delta: f64,
    pub tol: f64,
    pub agreement_tol: f64,
}

impl Default for FgrSection {
    fn default() -> Self {
        Self {
            delta: 0.2,
            tol: 1e-8,
            agreement_tol: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StandingWaveSection {
    pub epsilon: f64,
    pub fixed_point_tol: f64,
    pub rhs_tol: f64,
    pub evolution_tol: f64,
    pub modulus_tol: f64,
}

impl Default for StandingWaveSection {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            fixed_point_tol: 1e-12,
            rhs_tol: 1e-8,
            evolution_tol: 1e-4,
            modulus_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VirialSection {
    pub radius: f64,
    pub tolerance: f64,
}

impl Default for VirialSection {
    fn default() -> Self {
        Self {
            radius: 50.0,
            tolerance: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScatterSection {
    pub tolerance: f64,
}

impl Default for ScatterSection {
    fn default() -> Self {
        Self { tolerance: 1e-2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecaySection {
    pub sigma: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub taper_inner: f64,
    pub taper_outer: f64,
    pub exponent: f64,
    pub exponent_tol: f64,
}

impl Default for DecaySection {
    fn default() -> Self {
        Self {
            sigma: 5.0,
            t_min: 5.0,
            t_max: 80.0,
            samples: 16,
            taper_inner: 0.5,
            taper_outer: 0.8,
            exponent: -1.5,
            exponent_tol: 0.2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DampingSection {
    pub tolerance: f64,
    pub envelope_tol: f64,
    pub slope: f64,
    pub slope_tol: f64,
}

impl Default for DampingSection {
    fn default() -> Self {
        Self {
            tolerance: 0.1,
            envelope_tol: 0.2,
            slope: -0.25,
            slope_tol: 0.1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<ExperimentKind>,
    pub grid: GridSection,
    pub coupling: CouplingSection,
    pub initial: InitialSection,
    pub run: RunSection,
    pub fgr: FgrSection,
    pub standing_wave: StandingWaveSection,
    pub virial: VirialSection,
    pub scatter: ScatterSection,
    pub decay: DecaySection,
    pub damping: DampingSection,
}

fn parse_scalar(raw: &str) -> toml::Value {
    let doc = format!("v = {raw}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(raw.to_string())),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

/// Apply one `section.key=value` (or top-level `key=value`) override to a raw table.
pub fn apply_override(table: &mut toml::Table, spec: &str) -> Result<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::config(spec, "override must look like section.key=value"))?;
    let path = path.trim();
    let value = parse_scalar(raw.trim());
    match path.split_once('.') {
        Some((section, key)) => {
            let entry = table
                .entry(section.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()));
            let sub = entry
                .as_table_mut()
                .ok_or_else(|| Error::config(section, "not a section"))?;
            sub.insert(key.to_string(), value);
        }
        None => {
            table.insert(path.to_string(), value);
        }
    }
    Ok(())
}

fn finite(key: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be finite, got {v}")))
    }
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be positive, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, overrides: &[String]) -> Result<Self> {
        let mut table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::config("<document>", e.message().to_string()))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: ExperimentConfig = ExperimentConfig::deserialize(table).map_err(|e| {
            let key = e.message().split('`').nth(1).unwrap_or("<document>").to_string();
            Error::config(key, e.message().to_string())
        })?;
        Ok(cfg)
    }

    /// Read, override and validate. `kind` (from the command line) must agree with
    /// any `kind` stored in the file.
    pub fn load(path: &Path, kind: Option<ExperimentKind>, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("--config", format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml_str(&text, overrides)?;
        if let Some(k) = kind {
            match cfg.kind {
                Some(existing) if existing != k => {
                    return Err(Error::config(
                        "kind",
                        format!("config is for `{existing}` but `{k}` was requested"),
                    ))
                }
                _ => cfg.kind = Some(k),
            }
        }
        let base = path.parent().unwrap_or(Path::new("."));
        if let Some(f) = &cfg.initial.xi_file {
            if f.is_relative() {
                cfg.initial.xi_file = Some(base.join(f));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical TOML echo; parsing it reproduces this config.
    pub fn echo(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn kind(&self) -> Result<ExperimentKind> {
        self.kind.ok_or_else(|| Error::config("kind", "no experiment kind given"))
    }

    pub fn fgr_shell(&self) -> ShellParams {
        ShellParams {
            delta: self.fgr.delta,
            tol: self.fgr.tol,
        }
    }

    pub fn sampling(&self) -> FrequencySampling {
        FrequencySampling {
            rho_max: self.coupling.rho_max,
            refine: self.coupling.refine,
        }
    }

    pub fn spectral_shape(&self) -> SpectralShape {
        SpectralShape::Bump {
            center: self.coupling.center,
            half_width: self.coupling.half_width,
            amplitude: self.coupling.amplitude,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        if g.n < 2 {
            return Err(Error::config("grid.n", format!("must be >= 2, got {}", g.n)));
        }
        positive("grid.r_max", g.r_max)?;
        let c = &self.coupling;
        finite("coupling.amplitude", c.amplitude)?;
        positive("coupling.rho_max", c.rho_max)?;
        if c.refine < 8 {
            return Err(Error::config("coupling.refine", "must be >= 8"));
        }
        match c.kind {
            CouplingKind::Gaussian => positive("coupling.width", c.width)?,
            CouplingKind::SpectralBump => {
                positive("coupling.half_width", c.half_width)?;
                positive("coupling.center", c.center)?;
            }
        }
        let i = &self.initial;
        finite("initial.z_re", i.z_re)?;
        finite("initial.z_im", i.z_im)?;
        finite("initial.xi_amplitude", i.xi_amplitude)?;
        finite("initial.perturbation", i.perturbation)?;
        if i.xi == XiKind::Gaussian {
            positive("initial.xi_width", i.xi_width)?;
        }
        if i.xi == XiKind::File {
            match &i.xi_file {
                Some(p) if p.is_file() => {}
                Some(p) => return Err(Error::config("initial.xi_file", format!("{} does not exist", p.display()))),
                None => return Err(Error::config("initial.xi_file", "required when initial.xi = \"file\"")),
            }
        }
        let r = &self.run;
        positive("run.dt", r.dt)?;
        if !(r.t_end.is_finite() && r.t_end >= 0.0) {
            return Err(Error::config("run.t_end", format!("must be >= 0, got {}", r.t_end)));
        }
        if r.checkpoint_stride == 0 {
            return Err(Error::config("run.checkpoint_stride", "must be >= 1"));
        }
        if r.field_stride == 0 {
            return Err(Error::config("run.field_stride", "must be >= 1"));
        }
        positive("run.l4_ceiling", r.l4_ceiling)?;
        if !(0.0 < r.shell_fraction && r.shell_fraction < 1.0) {
            return Err(Error::config("run.shell_fraction", "must lie in (0, 1)"));
        }
        for (k, v) in [
            ("run.shell_tol", r.shell_tol),
            ("run.mass_tol", r.mass_tol),
            ("run.energy_tol", r.energy_tol),
            ("fgr.delta", self.fgr.delta),
            ("fgr.agreement_tol", self.fgr.agreement_tol),
            ("scatter.tolerance", self.scatter.tolerance),
            ("virial.tolerance", self.virial.tolerance),
            ("damping.tolerance", self.damping.tolerance),
        ] {
            positive(k, v)?;
        }
        if !(self.fgr.tol.is_finite() && self.fgr.tol >= 0.0) {
            return Err(Error::config("fgr.tol", "must be >= 0"));
        }
        let kind = self.kind;
        if kind == Some(ExperimentKind::StandingWave) {
            if c.kind != CouplingKind::SpectralBump {
                return Err(Error::config(
                    "coupling.kind",
                    "standing waves need a spectral-bump coupling whose transform vanishes near rho = 1",
                ));
            }
            let (lo, hi) = (c.center - c.half_width, c.center + c.half_width);
            let (slo, shi) = (1.0 - self.fgr.delta, 1.0 + self.fgr.delta);
            if lo < shi && hi > slo {
                return Err(Error::config(
                    "coupling.center",
                    format!(
                        "bump support [{lo}, {hi}] meets the shell [{slo}, {shi}]; the coupling must vanish there"
                    ),
                ));
            }
            if !(self.standing_wave.epsilon.is_finite() && self.standing_wave.epsilon >= 0.0) {
                return Err(Error::config("standing_wave.epsilon", "must be >= 0"));
            }
            if r.cubic_on {
                return Err(Error::config("run.cubic_on", "standing-wave runs need the cubic term off"));
            }
        }
        if kind == Some(ExperimentKind::Virial) && 2.0 * self.virial.radius > g.r_max {
            return Err(Error::config(
                "virial.radius",
                format!("2R = {} exceeds r_max = {}", 2.0 * self.virial.radius, g.r_max),
            ));
        }
        if kind == Some(ExperimentKind::Virial) {
            positive("virial.radius", self.virial.radius)?;
            if r.field_stride != 1 {
                return Err(Error::config("run.field_stride", "virial runs need a field at every checkpoint (1)"));
            }
        }
        if kind == Some(ExperimentKind::DecayProbe) {
            let d = &self.decay;
            positive("decay.sigma", d.sigma)?;
            positive("decay.t_min", d.t_min)?;
            if !(d.t_max > d.t_min) {
                return Err(Error::config("decay.t_max", "must exceed decay.t_min"));
            }
            if d.samples < 4 {
                return Err(Error::config("decay.samples", "need at least 4"));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::new(self.grid.n, self.grid.r_max).map_err(|e| e.context("grid"))
    }

    pub fn coupling(&self, grid: &RadialGrid) -> Result<Coupling> {
        let c = &self.coupling;
        let out = match c.kind {
            CouplingKind::Gaussian => {
                let field = RadialField::sample(grid, |r| c.amplitude * (-r * r / (2.0 * c.width * c.width)).exp())?;
                Coupling::physical(field, self.sampling())
            }
            CouplingKind::SpectralBump => Coupling::spectral(grid, self.spectral_shape(), self.sampling()),
        };
        out.map_err(|e| e.context("coupling"))
    }

    pub fn model(&self, coupling: Coupling) -> Result<ModelConfig> {
        let r = &self.run;
        let mut m = ModelConfig::new(coupling, r.dt, r.t_end)?;
        m.cubic_on = r.cubic_on;
        m.checkpoint_stride = r.checkpoint_stride;
        m.field_stride = r.field_stride;
        m.l4_ceiling = r.l4_ceiling;
        m.shell_fraction = r.shell_fraction;
        m.shell_tol = r.shell_tol;
        m.fgr = m.coupling.fgr(self.fgr_shell())?;
        m.validate()?;
        Ok(m)
    }

    pub fn initial_state(&self, grid: &RadialGrid) -> Result<SystemState> {
        let i = &self.initial;
        let mut xi = match i.xi {
            XiKind::Zero => RadialField::zeros(grid),
            XiKind::Gaussian => {
                RadialField::sample(grid, |r| i.xi_amplitude * (-r * r / (2.0 * i.xi_width * i.xi_width)).exp())?
            }
            XiKind::File => {
                let path = i.xi_file.as_ref().expect("validated");
                let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
                read_field(&mut f, grid).map_err(|e| e.context(format!("reading {}", path.display())))?
            }
        };
        if let Some(seed) = i.seed {
            if i.perturbation != 0.0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let modes = 16.min(grid.n());
                let mut coeffs = vec![C64::new(0.0, 0.0); grid.n()];
                for c in coeffs.iter_mut().take(modes) {
                    *c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * i.perturbation;
                }
                let p = SpectralField::from_coeffs(grid, coeffs)?.to_field();
                xi = &xi + &p;
            }
        }
        SystemState::new(xi, C64::new(i.z_re, i.z_im))
    }
}
