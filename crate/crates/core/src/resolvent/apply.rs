//! Action of `R(1 + omega) = (-Delta - 1 - omega)^{-1}` on radial fields.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::quadrature::cell_weights;
use crate::radial::{RadialField, SpectralField};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ResolventMode {
    /// Outgoing limit `(-Delta - 1 - omega - i0)^{-1}`, computed in physical space.
    LimitingAbsorption,
    /// Plain division on the discrete spectrum; the input must vanish (in frequency)
    /// within `delta` of the shell `rho = sqrt(1 + omega)`.
    Regular { delta: f64, tol: f64 },
}

pub fn resolvent_apply(g: &RadialField, omega: f64, mode: ResolventMode) -> Result<RadialField> {
    if !omega.is_finite() || !g.is_finite() {
        return Err(Error::InvalidArgument("non-finite resolvent input".into()));
    }
    match mode {
        ResolventMode::LimitingAbsorption => {
            if 1.0 + omega <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "limiting absorption needs 1 + omega > 0, got omega = {omega}"
                )));
            }
            Ok(outgoing(g, (1.0 + omega).sqrt()))
        }
        ResolventMode::Regular { delta, tol } => regular(g, omega, delta, tol),
    }
}

fn regular(g: &RadialField, omega: f64, delta: f64, tol: f64) -> Result<RadialField> {
    let lambda = 1.0 + omega;
    let mut s = g.to_spectral();
    let hat = s.hat_at_nodes();
    let grid = g.grid().clone();
    if lambda > 0.0 {
        let center = lambda.sqrt();
        let worst = grid
            .frequencies()
            .iter()
            .zip(&hat)
            .filter(|(rho, _)| (**rho - center).abs() <= delta)
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::ShellNotVanishing {
                center,
                min_abs_on_shell: worst,
                tol,
            });
        }
    }
    for (c, rho) in s.coeffs_mut().iter_mut().zip(grid.frequencies()) {
        let d = rho * rho - lambda;
        *c = if *c == C64::new(0.0, 0.0) { *c } else { *c / d };
    }
    Ok(SpectralField::from_coeffs(&grid, s.coeffs().to_vec())?.to_field())
}

const STENCIL: usize = 10;

/// Cumulative integrals `I_j = int_0^{r_j} f dr` at every node, with `f(0) = 0` and
/// `f(-r) = parity * f(r)` used for stencils that reach past the origin.
fn cumulative(f: &[C64], h: f64, parity: f64) -> Vec<C64> {
    let n = f.len();
    let half = STENCIL as i64 / 2;
    let value = |i: i64| -> C64 {
        match i {
            0 => C64::new(0.0, 0.0),
            i if i > 0 => f[(i - 1) as usize],
            i => f[(-i - 1) as usize] * parity,
        }
    };
    let weights: Vec<Vec<f64>> = (0..STENCIL as i64)
        .map(|shift| cell_weights(-(half - 1) - shift, STENCIL))
        .collect();
    let mut out = Vec::with_capacity(n);
    let mut acc = C64::new(0.0, 0.0);
    // cell [j, j+1] in node units (node 0 is the origin)
    for j in 0..n as i64 {
        let start = (j - (half - 1)).min(n as i64 + 1 - STENCIL as i64);
        let w = &weights[(j - (half - 1) - start) as usize];
        let mut cell = C64::new(0.0, 0.0);
        for (m, wm) in w.iter().enumerate() {
            cell += value(start + m as i64) * *wm;
        }
        acc += cell * h;
        out.push(acc);
    }
    out
}

fn outgoing(g: &RadialField, k: f64) -> RadialField {
    let grid = g.grid();
    let h = grid.h();
    let nodes = grid.nodes();
    let fs: Vec<C64> = nodes.iter().zip(g.values()).map(|(&r, &v)| v * (r * (k * r).sin())).collect();
    let fc: Vec<C64> = nodes.iter().zip(g.values()).map(|(&r, &v)| v * (r * (k * r).cos())).collect();
    let a = cumulative(&fs, h, 1.0);
    let b = cumulative(&fc, h, -1.0);
    let (a_tot, b_tot) = (a[a.len() - 1], b[b.len() - 1]);
    let i = C64::new(0.0, 1.0);
    let values = nodes
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            let w = C64::from_polar(1.0, k * r) * a[j] + ((b_tot - b[j]) + i * (a_tot - a[j])) * (k * r).sin();
            w / (k * r)
        })
        .collect();
    RadialField::from_values(grid, values).expect("finite by construction")
}
