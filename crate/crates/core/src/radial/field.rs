use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use super::grid::RadialGrid;
use crate::error::{Error, Result};

/// Samples `u(r_k)` of a radial function on R^3.
///
/// Boundary behavior is implicit: `r u(r) -> 0` at the origin and `u(r_max) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialField {
    grid: RadialGrid,
    values: Vec<C64>,
}

/// Orthonormal sine coefficients of `w(r) = r u(r)`:
/// `w(r_j) = sqrt(2/(n+1)) sum_k c_k sin(rho_k r_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: RadialGrid,
    coeffs: Vec<C64>,
}

fn check_finite(grid: &RadialGrid, values: &[C64]) -> Result<()> {
    match values
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        Some(index) => Err(Error::NonFinite {
            index,
            r: grid.nodes()[index],
        }),
        None => Ok(()),
    }
}

impl RadialField {
    pub fn zeros(grid: &RadialGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![C64::new(0.0, 0.0); grid.n()],
        }
    }

    pub fn from_values(grid: &RadialGrid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidArgument(format!(
                "expected {} values, got {}",
                grid.n(),
                values.len()
            )));
        }
        check_finite(grid, &values)?;
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    /// Evaluate a real profile at the nodes; the origin is never sampled.
    pub fn sample(grid: &RadialGrid, profile: impl Fn(f64) -> f64) -> Result<Self> {
        Self::sample_complex(grid, |r| C64::new(profile(r), 0.0))
    }

    pub fn sample_complex(grid: &RadialGrid, profile: impl Fn(f64) -> C64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| profile(r)).collect();
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        check_finite(&self.grid, &self.values).is_ok()
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: C64, other: &RadialField) -> Self {
        assert!(self.grid == other.grid, "axpy on mismatched grids");
        Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(f64, C64) -> C64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self
                .grid
                .nodes()
                .iter()
                .zip(&self.values)
                .map(|(&r, &v)| f(r, v))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|_, v| v.conj())
    }

    pub fn to_spectral(&self) -> SpectralField {
        let n = self.grid.n();
        let scale = (2.0 / (n + 1) as f64).sqrt();
        let w: Vec<C64> = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&r, &u)| u * r)
            .collect();
        let coeffs = self
            .grid
            .plan()
            .sine_sum(&w)
            .into_iter()
            .map(|c| c * scale)
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// `(self | other) = 4 pi sum self_k conj(other_k) r_k^2 h`.
    pub fn inner_product(&self, other: &RadialField) -> Result<C64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &RadialField) -> C64 {
        let nodes = self.grid.nodes();
        let mut acc = C64::new(0.0, 0.0);
        for ((r, a), b) in nodes.iter().zip(&self.values).zip(&other.values) {
            acc += a * b.conj() * (r * r);
        }
        acc * (4.0 * std::f64::consts::PI * self.grid.h())
    }

    /// `e^{i dt Delta} u`, exact on the discrete sine spectrum.
    pub fn free_propagate(&self, dt: f64) -> RadialField {
        self.to_spectral().free_propagate(dt).to_field()
    }

    /// `-Delta u` through the spectral multiplier `rho^2`.
    pub fn neg_laplacian(&self) -> RadialField {
        let mut s = self.to_spectral();
        for (c, rho) in s.coeffs.iter_mut().zip(self.grid.frequencies()) {
            *c *= rho * rho;
        }
        s.to_field()
    }

    /// Spectral radial derivative `d u / d r` at the nodes.
    pub fn radial_derivative(&self) -> RadialField {
        let s = self.to_spectral();
        let n = self.grid.n();
        let scale = (2.0 / (n + 1) as f64).sqrt();
        let b: Vec<C64> = s
            .coeffs
            .iter()
            .zip(self.grid.frequencies())
            .map(|(c, rho)| c * rho)
            .collect();
        let dw = self.grid.plan().cosine_sum(&b);
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(dw)
            .zip(&self.values)
            .map(|((&r, dw), &u)| (dw * scale - u) / r)
            .collect();
        RadialField {
            grid: self.grid.clone(),
            values,
        }
    }
}

impl SpectralField {
    pub fn from_coeffs(grid: &RadialGrid, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != grid.n() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                grid.n(),
                coeffs.len()
            )));
        }
        check_finite(grid, &coeffs)?;
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    pub fn to_field(&self) -> RadialField {
        let n = self.grid.n();
        let scale = (2.0 / (n + 1) as f64).sqrt();
        let w = self.grid.plan().sine_sum(&self.coeffs);
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(w)
            .map(|(&r, w)| w * (scale / r))
            .collect();
        RadialField {
            grid: self.grid.clone(),
            values,
        }
    }

    pub fn free_propagate(mut self, dt: f64) -> SpectralField {
        for (c, rho) in self.coeffs.iter_mut().zip(self.grid.frequencies()) {
            *c *= C64::from_polar(1.0, -rho * rho * dt);
        }
        self
    }

    /// `4 pi h sum m(rho_k) |c_k|^2`.
    pub fn weighted_sum(&self, multiplier: impl Fn(f64) -> f64) -> f64 {
        let s: f64 = self
            .coeffs
            .iter()
            .zip(self.grid.frequencies())
            .map(|(c, &rho)| multiplier(rho) * c.norm_sqr())
            .sum();
        s * self.grid.plancherel()
    }

    /// Value of the radial Fourier transform at `rho_k` implied by the coefficients,
    /// `G^(rho_k) = (4 pi / rho_k) h sqrt((n+1)/2) c_k`.
    pub fn hat_at_nodes(&self) -> Vec<C64> {
        let n = self.grid.n();
        let f = 4.0 * std::f64::consts::PI * self.grid.h() * ((n + 1) as f64 / 2.0).sqrt();
        self.coeffs
            .iter()
            .zip(self.grid.frequencies())
            .map(|(c, rho)| c * (f / rho))
            .collect()
    }

    /// Inverse of [`SpectralField::hat_at_nodes`].
    pub fn from_hat_at_nodes(grid: &RadialGrid, hat: impl Fn(f64) -> f64) -> Result<Self> {
        let n = grid.n();
        let f = 4.0 * std::f64::consts::PI * grid.h() * ((n + 1) as f64 / 2.0).sqrt();
        let coeffs = grid
            .frequencies()
            .iter()
            .map(|&rho| C64::new(hat(rho) * rho / f, 0.0))
            .collect();
        Self::from_coeffs(grid, coeffs)
    }
}

impl Add for &RadialField {
    type Output = RadialField;
    fn add(self, rhs: &RadialField) -> RadialField {
        self.axpy(C64::new(1.0, 0.0), rhs)
    }
}

impl Sub for &RadialField {
    type Output = RadialField;
    fn sub(self, rhs: &RadialField) -> RadialField {
        self.axpy(C64::new(-1.0, 0.0), rhs)
    }
}

impl Mul<C64> for &RadialField {
    type Output = RadialField;
    fn mul(self, rhs: C64) -> RadialField {
        self.scaled(rhs)
    }
}
