use std::f64::consts::PI;

use super::field::RadialField;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    L2,
    L4,
    L6,
    /// `H^theta` for `theta in [0, 1]`, via the multiplier `(1 + rho^2)^{theta/2}`.
    Sobolev(f64),
    /// `<x>^sigma`-weighted L2; a negative `sigma` gives `L^{2,-|sigma|}`.
    Weighted(f64),
}

impl std::str::FromStr for NormKind {
    type Err = Error;

    /// Accepts `L2`, `L4`, `L6`, `H<theta>` and `L2s<sigma>` (e.g. `H0.5`, `L2s-5`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidNorm(format!("unknown norm kind `{s}`"));
        match s {
            "L2" => Ok(NormKind::L2),
            "L4" => Ok(NormKind::L4),
            "L6" => Ok(NormKind::L6),
            _ => {
                if let Some(rest) = s.strip_prefix("L2s") {
                    rest.parse().map(NormKind::Weighted).map_err(|_| bad())
                } else if let Some(rest) = s.strip_prefix('H') {
                    let theta: f64 = rest.parse().map_err(|_| bad())?;
                    if !(0.0..=1.0).contains(&theta) {
                        return Err(Error::InvalidNorm(format!("theta = {theta} outside [0, 1]")));
                    }
                    Ok(NormKind::Sobolev(theta))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

fn lp(u: &RadialField, p: f64) -> f64 {
    let grid = u.grid();
    let s: f64 = grid
        .nodes()
        .iter()
        .zip(u.values())
        .map(|(r, v)| v.norm().powf(p) * r * r)
        .sum();
    (4.0 * PI * grid.h() * s).powf(1.0 / p)
}

pub fn norm(u: &RadialField, kind: NormKind) -> Result<f64> {
    match kind {
        NormKind::L2 => Ok(lp(u, 2.0)),
        NormKind::L4 => Ok(lp(u, 4.0)),
        NormKind::L6 => Ok(lp(u, 6.0)),
        NormKind::Sobolev(theta) => {
            if !(0.0..=1.0).contains(&theta) {
                return Err(Error::InvalidNorm(format!("theta = {theta} outside [0, 1]")));
            }
            Ok(u
                .to_spectral()
                .weighted_sum(|rho| (1.0 + rho * rho).powf(theta))
                .sqrt())
        }
        NormKind::Weighted(sigma) => {
            if !sigma.is_finite() {
                return Err(Error::InvalidNorm(format!("sigma = {sigma}")));
            }
            let grid = u.grid();
            let s: f64 = grid
                .nodes()
                .iter()
                .zip(u.values())
                .map(|(r, v)| (1.0 + r * r).powf(sigma) * v.norm_sqr() * r * r)
                .sum();
            Ok((4.0 * PI * grid.h() * s).sqrt())
        }
    }
}

/// `||grad u||_{L2}^2` through the spectral multiplier `rho^2`.
pub fn gradient_norm_sq(u: &RadialField) -> f64 {
    u.to_spectral().weighted_sum(|rho| rho * rho)
}

/// `||u||_{L^p}^p` by radial quadrature.
pub fn lp_power(u: &RadialField, p: f64) -> f64 {
    let grid = u.grid();
    let s: f64 = grid
        .nodes()
        .iter()
        .zip(u.values())
        .map(|(r, v)| v.norm().powf(p) * r * r)
        .sum();
    4.0 * PI * grid.h() * s
}

/// Field mass `||u||_{L2}^2` restricted to `r >= r_min`.
pub fn shell_mass(u: &RadialField, r_min: f64) -> f64 {
    let grid = u.grid();
    let s: f64 = grid
        .nodes()
        .iter()
        .zip(u.values())
        .filter(|(r, _)| **r >= r_min)
        .map(|(r, v)| v.norm_sqr() * r * r)
        .sum();
    4.0 * PI * grid.h() * s
}
