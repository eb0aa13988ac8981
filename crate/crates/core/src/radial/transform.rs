//! Sine/cosine sums on the radial grid, evaluated through one complex FFT of
//! length `2(n + 1)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

pub(crate) struct TrigPlan {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for TrigPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrigPlan").field("n", &self.n).finish()
    }
}

impl TrigPlan {
    pub(crate) fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(2 * (n + 1));
        Self { n, fft }
    }

    /// `y_k = sum_{j=1..n} x_j sin(pi j k / (n+1))` for `k = 1..n`.
    pub(crate) fn sine_sum(&self, x: &[C64]) -> Vec<C64> {
        let n = self.n;
        debug_assert_eq!(x.len(), n);
        let len = 2 * (n + 1);
        let mut buf = vec![C64::new(0.0, 0.0); len];
        for (j, &v) in x.iter().enumerate() {
            buf[j + 1] = v;
            buf[len - j - 1] = -v;
        }
        self.fft.process(&mut buf);
        // forward FFT of the odd extension is -2i * (sine sum)
        buf[1..=n].iter().map(|a| C64::new(-a.im, a.re) * 0.5).collect()
    }

    /// `y_j = sum_{k=1..n} b_k cos(pi j k / (n+1))` for `j = 1..n`.
    pub(crate) fn cosine_sum(&self, b: &[C64]) -> Vec<C64> {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        let len = 2 * (n + 1);
        let mut buf = vec![C64::new(0.0, 0.0); len];
        for (k, &v) in b.iter().enumerate() {
            buf[k + 1] = v;
            buf[len - k - 1] = v;
        }
        self.fft.process(&mut buf);
        buf[1..=n].iter().map(|a| a * 0.5).collect()
    }
}
