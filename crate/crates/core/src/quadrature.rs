//! Small quadrature helpers shared by the resolvent and diagnostics modules.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Weights `w_m = int_0^1 L_m(x) dx` of the Lagrange basis on integer nodes
/// `offset, offset+1, ..., offset+len-1`.
pub fn cell_weights(offset: i64, len: usize) -> Vec<f64> {
    let (gx, gw) = gauss_legendre(len.div_ceil(2) + 1);
    let xs: Vec<f64> = (0..len).map(|m| (offset + m as i64) as f64).collect();
    let mut out = vec![0.0; len];
    for (x, wq) in gx.iter().zip(&gw) {
        let t = 0.5 * (x + 1.0);
        for (m, o) in out.iter_mut().enumerate() {
            let mut l = 1.0;
            for (q, &xq) in xs.iter().enumerate() {
                if q != m {
                    l *= (t - xq) / (xs[m] - xq);
                }
            }
            *o += 0.5 * wq * l;
        }
    }
    out
}

/// Lagrange interpolation through `(xs, ys)` evaluated at `x`.
pub fn lagrange_eval<T>(xs: &[f64], ys: &[T], x: f64) -> T
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Default,
{
    let mut acc = T::default();
    for (m, (&xm, &ym)) in xs.iter().zip(ys).enumerate() {
        let mut l = 1.0;
        for (q, &xq) in xs.iter().enumerate() {
            if q != m {
                l *= (x - xq) / (xm - xq);
            }
        }
        acc = acc + ym * l;
    }
    acc
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Trapezoid rule on possibly nonuniform abscissae.
pub fn trapezoid(t: &[f64], f: &[f64]) -> f64 {
    t.windows(2)
        .zip(f.windows(2))
        .map(|(tw, fw)| 0.5 * (tw[1] - tw[0]) * (fw[0] + fw[1]))
        .sum()
}

/// Smooth step: 0 for `x <= 0`, 1 for `x >= 1`, C-infinity in between.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            for p in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
                let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn cell_weights_exact_for_degree() {
        for offset in [-4i64, -2, 0, -9] {
            let w = cell_weights(offset, 10);
            for p in 0..10 {
                let q: f64 = w
                    .iter()
                    .enumerate()
                    .map(|(m, w)| w * ((offset + m as i64) as f64 - 0.5).powi(p))
                    .sum();
                let exact = if p % 2 == 1 { 0.0 } else { 0.5f64.powi(p) / (p as f64 + 1.0) };
                let scale: f64 = w
                    .iter()
                    .enumerate()
                    .map(|(m, w)| (w * ((offset + m as i64) as f64 - 0.5).powi(p)).abs())
                    .sum();
                assert!((q - exact).abs() < 1e-14 * scale.max(1.0), "offset={offset} p={p}: {q}");
            }
        }
    }

    #[test]
    fn fit_recovers_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|x| 2.0 - 1.5 * x).collect();
        let (s, c) = linear_fit(&x, &y);
        assert!((s + 1.5).abs() < 1e-14 && (c - 2.0).abs() < 1e-14);
    }
}
