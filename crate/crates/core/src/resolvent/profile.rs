use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::radial::{RadialField, RadialGrid, SpectralField};

/// Couplings prescribed directly by their radial Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralShape {
    /// `A exp(1 - 1/(1 - x^2))` with `x = (rho - center) / half_width`, zero for `|x| >= 1`.
    Bump {
        center: f64,
        half_width: f64,
        amplitude: f64,
    },
}

impl SpectralShape {
    pub fn eval(&self, rho: f64) -> f64 {
        match *self {
            SpectralShape::Bump {
                center,
                half_width,
                amplitude,
            } => {
                let x = (rho - center) / half_width;
                if x.abs() >= 1.0 {
                    0.0
                } else {
                    amplitude * (1.0 - 1.0 / (1.0 - x * x)).exp()
                }
            }
        }
    }

    /// Closed support in frequency.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            SpectralShape::Bump {
                center, half_width, ..
            } => (center - half_width, center + half_width),
        }
    }

    /// Physical-space field whose discrete transform equals the shape at every
    /// grid frequency.
    pub fn to_field(&self, grid: &RadialGrid) -> Result<RadialField> {
        Ok(SpectralField::from_hat_at_nodes(grid, |rho| self.eval(rho))?.to_field())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProfileSource {
    Physical(RadialField),
    Spectral(SpectralShape),
}

/// Frequency sampling: midpoints `(m + 1/2) / refine` up to `rho_max`, so that
/// `rho = 1` sits on a cell boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencySampling {
    pub rho_max: f64,
    pub refine: usize,
}

impl Default for FrequencySampling {
    fn default() -> Self {
        Self {
            rho_max: 16.0,
            refine: 64,
        }
    }
}

/// Samples of `G^(rho)`, `rho = |y|`, for a radial coupling.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralProfile {
    rho: Vec<f64>,
    values: Vec<C64>,
    step: f64,
    source: ProfileSource,
}

impl SpectralProfile {
    fn build(source: ProfileSource, sampling: FrequencySampling) -> Result<Self> {
        if sampling.refine < 8 {
            return Err(Error::InvalidArgument(format!(
                "frequency refinement must be >= 8, got {}",
                sampling.refine
            )));
        }
        let step = 1.0 / sampling.refine as f64;
        let count = (sampling.rho_max / step).floor() as usize;
        if (count as f64) * step < 1.0 + 8.0 * step {
            return Err(Error::ShellNotCovered {
                lo: 0.0,
                hi: count as f64 * step,
            });
        }
        let rho: Vec<f64> = (0..count).map(|m| (m as f64 + 0.5) * step).collect();
        let mut p = Self {
            values: Vec::new(),
            rho,
            step,
            source,
        };
        p.values = p.rho.iter().map(|&r| p.eval(r)).collect();
        if let Some(index) = p.values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite {
                index,
                r: p.rho[index],
            });
        }
        Ok(p)
    }

    pub fn from_shape(shape: SpectralShape, sampling: FrequencySampling) -> Result<Self> {
        Self::build(ProfileSource::Spectral(shape), sampling)
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn rho_max(&self) -> f64 {
        self.rho.len() as f64 * self.step
    }

    pub fn source(&self) -> &ProfileSource {
        &self.source
    }

    /// `G^(rho)` evaluated from the source at an arbitrary frequency.
    pub fn eval(&self, rho: f64) -> C64 {
        match &self.source {
            ProfileSource::Spectral(shape) => C64::new(shape.eval(rho), 0.0),
            ProfileSource::Physical(g) => radial_hat(g, rho),
        }
    }
}

/// `G^(rho) = (4 pi / rho) int G(r) r sin(rho r) dr` by trapezoid quadrature on the
/// grid; `rho = 0` uses the limit `4 pi int G r^2 dr`.
pub fn radial_hat(g: &RadialField, rho: f64) -> C64 {
    let grid = g.grid();
    let h = grid.h();
    let mut acc = C64::new(0.0, 0.0);
    if rho.abs() < 1e-300 {
        for (r, v) in grid.nodes().iter().zip(g.values()) {
            acc += v * (r * r);
        }
        return acc * (4.0 * PI * h);
    }
    for (r, v) in grid.nodes().iter().zip(g.values()) {
        acc += v * (r * (rho * r).sin());
    }
    acc * (4.0 * PI * h / rho)
}

/// Radial Fourier transform of a physical coupling on the given frequency sampling.
pub fn hat_transform(g: &RadialField, sampling: FrequencySampling) -> Result<SpectralProfile> {
    if !g.is_finite() {
        return Err(Error::InvalidArgument("non-finite coupling".into()));
    }
    SpectralProfile::build(ProfileSource::Physical(g.clone()), sampling)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> RadialGrid {
        RadialGrid::new(2047, 40.0).unwrap()
    }

    #[test]
    fn zero_coupling_zero_transform() {
        let p = hat_transform(&RadialField::zeros(&grid()), FrequencySampling::default()).unwrap();
        assert!(p.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn gaussian_transform_closed_form() {
        let g = RadialField::sample(&grid(), |r| (-r * r / 2.0).exp()).unwrap();
        for rho in [0.0f64, 1.0, 2.0] {
            let exact = (2.0 * PI).powf(1.5) * (-rho * rho / 2.0).exp();
            let got = radial_hat(&g, rho);
            assert!((got.re - exact).abs() < 1e-8 && got.im.abs() < 1e-14, "rho={rho}");
        }
    }

    #[test]
    fn transform_is_linear() {
        let gr = grid();
        let f = RadialField::sample(&gr, |r| (-r * r / 2.0).exp()).unwrap();
        let g = RadialField::sample(&gr, |r| (-(r - 1.0).powi(2)).exp() * r).unwrap();
        let (a, b) = (C64::new(0.3, -1.2), C64::new(2.0, 0.5));
        let combo = f.scaled(a).axpy(b, &g);
        for rho in [0.25, 1.0, 3.7] {
            let lhs = radial_hat(&combo, rho);
            let rhs = a * radial_hat(&f, rho) + b * radial_hat(&g, rho);
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn bump_field_reproduces_shape_at_grid_frequencies() {
        let shape = SpectralShape::Bump {
            center: 2.0,
            half_width: 0.5,
            amplitude: 10.0,
        };
        let gr = RadialGrid::new(1023, 100.0).unwrap();
        let g = shape.to_field(&gr).unwrap();
        let hat = g.to_spectral().hat_at_nodes();
        for (h, &rho) in hat.iter().zip(gr.frequencies()) {
            assert!((h.re - shape.eval(rho)).abs() < 1e-12);
        }
        assert!(hat
            .iter()
            .zip(gr.frequencies())
            .filter(|(_, r)| (**r - 1.0).abs() < 0.4)
            .all(|(h, _)| h.norm() < 1e-12));
    }

    #[test]
    fn sampling_must_cover_unit_shell() {
        let gr = grid();
        let g = RadialField::sample(&gr, |r| (-r * r).exp()).unwrap();
        let s = FrequencySampling {
            rho_max: 1.0,
            refine: 16,
        };
        assert!(matches!(hat_transform(&g, s), Err(Error::ShellNotCovered { .. })));
    }
}
