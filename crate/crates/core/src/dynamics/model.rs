use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::radial::{gradient_norm_sq, lp_power, norm, NormKind, RadialField, RadialGrid};
use crate::resolvent::{
    hat_transform, FgrReport, FrequencySampling, ShellParams, SpectralProfile, SpectralShape,
};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// The coupling function on the grid together with its radial Fourier profile.
#[derive(Clone, Debug)]
pub struct Coupling {
    field: RadialField,
    profile: SpectralProfile,
    norm_sq: f64,
}

impl Coupling {
    pub fn physical(field: RadialField, sampling: FrequencySampling) -> Result<Self> {
        let profile = hat_transform(&field, sampling)?;
        let norm_sq = field.inner_unchecked(&field).re;
        Ok(Self {
            field,
            profile,
            norm_sq,
        })
    }

    /// `G^` prescribed in frequency; the physical field is the discrete inverse transform.
    pub fn spectral(grid: &RadialGrid, shape: SpectralShape, sampling: FrequencySampling) -> Result<Self> {
        let field = shape.to_field(grid)?;
        let profile = SpectralProfile::from_shape(shape, sampling)?;
        let norm_sq = field.inner_unchecked(&field).re;
        Ok(Self {
            field,
            profile,
            norm_sq,
        })
    }

    pub fn gaussian(grid: &RadialGrid, width: f64, amplitude: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidArgument(format!("gaussian width must be positive, got {width}")));
        }
        let field = RadialField::sample(grid, |r| amplitude * (-r * r / (2.0 * width * width)).exp())?;
        Self::physical(field, FrequencySampling::default())
    }

    pub fn zero(grid: &RadialGrid) -> Self {
        Self::physical(RadialField::zeros(grid), FrequencySampling::default())
            .expect("zero coupling is always valid")
    }

    pub fn field(&self) -> &RadialField {
        &self.field
    }

    pub fn profile(&self) -> &SpectralProfile {
        &self.profile
    }

    /// `||G||_{L2}^2`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn fgr(&self, shell: ShellParams) -> Result<FgrReport> {
        FgrReport::compute(&self.profile, shell)
    }
}

#[derive(Clone, Debug)]
pub struct ModelConfig {
    pub coupling: Coupling,
    pub cubic_on: bool,
    pub dt: f64,
    pub t_end: f64,
    pub checkpoint_stride: usize,
    /// Full fields are kept on every `field_stride`-th checkpoint (and the last one).
    pub field_stride: usize,
    /// Abort when `||xi||_{L4}^4` exceeds this.
    pub l4_ceiling: f64,
    /// Mass beyond `shell_fraction * r_max` is watched for wall contact.
    pub shell_fraction: f64,
    /// Checkpoints whose outer-shell mass exceeds `shell_tol * M(0)` are flagged.
    pub shell_tol: f64,
    pub fgr: FgrReport,
}

impl ModelConfig {
    pub fn new(coupling: Coupling, dt: f64, t_end: f64) -> Result<Self> {
        let fgr = coupling.fgr(ShellParams::default())?;
        let cfg = Self {
            coupling,
            cubic_on: true,
            dt,
            t_end,
            checkpoint_stride: 10,
            field_stride: 1,
            l4_ceiling: 1e6,
            shell_fraction: 0.9,
            shell_tol: 1e-4,
            fgr,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn grid(&self) -> &RadialGrid {
        self.coupling.field.grid()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::InvalidArgument(format!("t_end must be >= 0, got {}", self.t_end)));
        }
        if self.checkpoint_stride == 0 || self.field_stride == 0 {
            return Err(Error::InvalidArgument("strides must be >= 1".into()));
        }
        if !(0.0 < self.shell_fraction && self.shell_fraction < 1.0) {
            return Err(Error::InvalidArgument("shell_fraction must lie in (0, 1)".into()));
        }
        Ok(())
    }

    /// Number of steps and the effective step so that the run ends exactly at `t_end`.
    pub fn schedule(&self) -> (usize, f64) {
        let n = (self.t_end / self.dt).round() as usize;
        if n == 0 {
            (0, self.dt)
        } else {
            (n, self.t_end / n as f64)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemState {
    pub xi: RadialField,
    pub z: C64,
    pub t: f64,
}

impl SystemState {
    pub fn new(xi: RadialField, z: C64) -> Result<Self> {
        if !xi.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidArgument("initial state must be finite".into()));
        }
        Ok(Self { xi, z, t: 0.0 })
    }

    pub fn is_finite(&self) -> bool {
        self.xi.is_finite() && self.z.re.is_finite() && self.z.im.is_finite()
    }

    /// `(e^{i theta} xi, e^{i theta} z)`.
    pub fn rotated(&self, theta: f64) -> Self {
        let p = C64::from_polar(1.0, theta);
        Self {
            xi: self.xi.scaled(p),
            z: self.z * p,
            t: self.t,
        }
    }
}

/// `M = ||xi||^2 / 2 + |z|^2`.
pub fn mass(state: &SystemState) -> f64 {
    0.5 * norm(&state.xi, NormKind::L2).expect("L2 is always defined").powi(2) + state.z.norm_sqr()
}

/// `E = ||grad xi||^2 / 2 + ||xi||_4^4 / 4 + |z|^2 + Re(|z|^2 z (G|xi))`.
pub fn energy(state: &SystemState, g: &RadialField) -> Result<f64> {
    let g_xi = g.inner_product(&state.xi)?;
    let z = state.z;
    Ok(0.5 * gradient_norm_sq(&state.xi)
        + 0.25 * lp_power(&state.xi, 4.0)
        + z.norm_sqr()
        + (z * z.norm_sqr() * g_xi).re)
}

/// Oscillator velocity given `A = (G|xi)`.
pub(crate) fn z_velocity(z: C64, a: C64) -> C64 {
    -I * (z + 0.5 * z * z * a + z.norm_sqr() * a.conj())
}

pub fn rhs(state: &SystemState, config: &ModelConfig) -> Result<(RadialField, C64)> {
    let g = config.coupling.field();
    let a = g.inner_product(&state.xi)?;
    let z = state.z;
    let forcing = z * z.norm_sqr();
    let lap = state.xi.neg_laplacian();
    let dxi = lap.axpy(forcing, g);
    let dxi = if config.cubic_on {
        let cubic = state.xi.map(|_, v| v * v.norm_sqr());
        &dxi + &cubic
    } else {
        dxi
    };
    Ok((dxi.scaled(-I), z_velocity(z, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> RadialGrid {
        RadialGrid::new(1023, 40.0).unwrap()
    }

    #[test]
    fn mass_examples() {
        let g = grid();
        let zero = SystemState::new(RadialField::zeros(&g), C64::new(0.0, 0.0)).unwrap();
        assert_eq!(mass(&zero), 0.0);
        let s = SystemState::new(RadialField::zeros(&g), C64::new(0.3, 0.0)).unwrap();
        assert!((mass(&s) - 0.09).abs() < 1e-15);
        let s = SystemState::new(RadialField::sample(&g, |r| (-r * r / 2.0).exp()).unwrap(), C64::default()).unwrap();
        assert!((mass(&s) - 0.5 * PI.powf(1.5)).abs() < 1e-10);
    }

    #[test]
    fn energy_examples() {
        let g = grid();
        let c = Coupling::gaussian(&g, 1.0, 1.0).unwrap();
        let s = SystemState::new(RadialField::zeros(&g), C64::new(0.4, -0.7)).unwrap();
        assert!((energy(&s, c.field()).unwrap() - 0.65).abs() < 1e-15);
        let xi = RadialField::sample(&g, |r| (-(r - 1.0).powi(2)).exp()).unwrap();
        let s = SystemState::new(xi, C64::new(0.3, 0.2)).unwrap();
        let e0 = energy(&s, c.field()).unwrap();
        let e1 = energy(&s.rotated(0.7), c.field()).unwrap();
        assert!((e0 - e1).abs() < 1e-13 * e0.abs());
    }

    #[test]
    fn rhs_examples() {
        let g = grid();
        let c = Coupling::gaussian(&g, 1.0, 1.0).unwrap();
        let cfg = ModelConfig::new(c.clone(), 0.01, 1.0).unwrap();
        let zero = SystemState::new(RadialField::zeros(&g), C64::default()).unwrap();
        let (dxi, dz) = rhs(&zero, &cfg).unwrap();
        assert!(dxi.values().iter().all(|v| v.norm() == 0.0) && dz.norm() == 0.0);
        let s = SystemState::new(RadialField::zeros(&g), C64::new(1.0, 0.0)).unwrap();
        let (dxi, dz) = rhs(&s, &cfg).unwrap();
        assert!((dz + I).norm() < 1e-15);
        for (a, b) in dxi.values().iter().zip(c.field().values()) {
            assert!((a + I * b).norm() < 1e-15);
        }
    }

    #[test]
    fn config_validation() {
        let c = Coupling::zero(&grid());
        assert!(ModelConfig::new(c.clone(), 0.0, 1.0).is_err());
        assert!(ModelConfig::new(c.clone(), 0.01, -1.0).is_err());
        let cfg = ModelConfig::new(c, 0.3, 1.0).unwrap();
        let (n, dt) = cfg.schedule();
        assert_eq!(n, 3);
        assert!((dt * 3.0 - 1.0).abs() < 1e-15);
    }
}
