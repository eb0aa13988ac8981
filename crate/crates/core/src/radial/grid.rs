use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::transform::TrigPlan;
use crate::error::{Error, Result};

struct GridInner {
    n: usize,
    r_max: f64,
    h: f64,
    nodes: Vec<f64>,
    freqs: Vec<f64>,
    plan: TrigPlan,
}

/// Uniform interior radial nodes `r_k = k h`, `k = 1..n`, with `h = r_max / (n + 1)`.
///
/// The matching Dirichlet sine frequencies are `rho_k = k pi / r_max`. Cloning is
/// cheap; the FFT plan is shared.
#[derive(Clone)]
pub struct RadialGrid(Arc<GridInner>);

impl fmt::Debug for RadialGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialGrid")
            .field("n", &self.0.n)
            .field("r_max", &self.0.r_max)
            .finish()
    }
}

impl PartialEq for RadialGrid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.n == other.0.n && self.0.r_max == other.0.r_max)
    }
}

impl RadialGrid {
    pub fn new(n: usize, r_max: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need n >= 2, got {n}")));
        }
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::InvalidGrid(format!("need finite r_max > 0, got {r_max}")));
        }
        let h = r_max / (n + 1) as f64;
        let nodes = (1..=n).map(|k| k as f64 * h).collect();
        let freqs = (1..=n).map(|k| k as f64 * PI / r_max).collect();
        Ok(Self(Arc::new(GridInner {
            n,
            r_max,
            h,
            nodes,
            freqs,
            plan: TrigPlan::new(n),
        })))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn r_max(&self) -> f64 {
        self.0.r_max
    }

    pub fn h(&self) -> f64 {
        self.0.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.0.nodes
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.0.freqs
    }

    /// Largest resolved frequency `rho_n`.
    pub fn rho_max(&self) -> f64 {
        self.0.freqs[self.0.n - 1]
    }

    /// Radial quadrature weight `4 pi r_k^2 h` for node `k` (0-based).
    pub fn weight(&self, k: usize) -> f64 {
        let r = self.0.nodes[k];
        4.0 * PI * r * r * self.0.h
    }

    /// Factor linking the orthonormal sine coefficients to the L2(R^3) norm:
    /// `||u||^2 = PLANCHEREL * sum |c_k|^2` with `PLANCHEREL = 4 pi h`.
    pub fn plancherel(&self) -> f64 {
        4.0 * PI * self.0.h
    }

    pub(crate) fn plan(&self) -> &TrigPlan {
        &self.0.plan
    }

    pub(crate) fn ensure_same(&self, other: &RadialGrid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                expected_n: self.n(),
                expected_r: self.r_max(),
                got_n: other.n(),
                got_r: other.r_max(),
            })
        }
    }
}
