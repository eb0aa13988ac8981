//! Resonance constants of the coupling at the threshold `-Delta = 1`.
//!
//! Conventions: `(f|g) = int f conj(g) dx`, `G^(y) = int e^{-ixy} G(x) dx`, and
//! Plancherel `(f|g) = (2 pi)^{-3} int f^ conj(g^) dy`. With
//! `R_+(1) = lim_{eps -> 0+} (-Delta - 1 - i eps)^{-1}` this gives
//!
//! ```text
//! beta  = (G | R_+(1) G) = (1 / 2 pi^2) [ PV int_0^inf F(rho) / (rho^2 - 1) drho - i (pi/2) F(1) ]
//! Gamma = -Im beta = |G^(1)|^2 / (4 pi) = sphere_integral / (16 pi^2)
//! ```
//!
//! where `F(rho) = rho^2 |G^(rho)|^2` and `sphere_integral = int_{|y|=1} |G^|^2 dsigma`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::profile::SpectralProfile;
use crate::error::{Error, Result};
use crate::quadrature::lagrange_eval;

/// Shell parameters for the resonance check around `|y| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellParams {
    pub delta: f64,
    pub tol: f64,
}

impl Default for ShellParams {
    fn default() -> Self {
        Self {
            delta: 0.2,
            tol: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FgrReport {
    pub beta: C64,
    pub gamma: f64,
    pub sphere_integral: f64,
    pub fgr_holds: bool,
    pub min_abs_on_shell: f64,
}

const INTERP_POINTS: usize = 12;

/// `F(1)` interpolated from the sampled profile (independent of `SpectralProfile::eval`).
fn shell_density_from_samples(profile: &SpectralProfile) -> f64 {
    let k = (1.0 / profile.step()).round() as usize;
    let lo = k - INTERP_POINTS / 2;
    let xs: Vec<f64> = profile.rho()[lo..lo + INTERP_POINTS].to_vec();
    let ys: Vec<f64> = profile.values()[lo..lo + INTERP_POINTS]
        .iter()
        .zip(&xs)
        .map(|(v, r)| r * r * v.norm_sqr())
        .collect();
    lagrange_eval(&xs, &ys, 1.0)
}

fn check_covers_shell(profile: &SpectralProfile) -> Result<()> {
    let k = (1.0 / profile.step()).round() as usize;
    if k < INTERP_POINTS / 2 || k + INTERP_POINTS / 2 > profile.rho().len() {
        return Err(Error::ShellNotCovered {
            lo: 0.0,
            hi: profile.rho_max(),
        });
    }
    Ok(())
}

/// `int_{|y|=1} |G^(y)|^2 dsigma`; the integrand is constant on the sphere for radial `G`.
pub fn sphere_integral(profile: &SpectralProfile) -> f64 {
    4.0 * PI * profile.eval(1.0).norm_sqr()
}

/// Damping rate from the delta-shell formula.
pub fn fgr_gamma(profile: &SpectralProfile) -> Result<f64> {
    check_covers_shell(profile)?;
    Ok(sphere_integral(profile) / (16.0 * PI * PI))
}

/// `int_L^inf psi(rho) / (rho^2 - 1) drho` for `psi = 4 / (1 + rho^2)^2`, `L > 1`.
fn subtraction_tail(l: f64) -> f64 {
    let a = 0.5 * ((l + 1.0) / (l - 1.0)).ln();
    let b = 0.5 * PI - l.atan();
    let c = 0.25 * PI - l / (2.0 * (1.0 + l * l)) - 0.5 * l.atan();
    a - b - 2.0 * c
}

/// `beta = (G | R_+(1) G)` by singularity-subtracted midpoint quadrature plus the
/// explicit delta-shell term.
///
/// The subtracted kernel is `F(1) psi(rho)`, `psi = 4/(1+rho^2)^2`, whose principal
/// value over `(0, inf)` is `-pi`; the quadrature integrand is even in `rho`, so the
/// midpoint rule converges spectrally.
pub fn beta_resolvent(profile: &SpectralProfile) -> Result<C64> {
    check_covers_shell(profile)?;
    let f1 = shell_density_from_samples(profile);
    let step = profile.step();
    let mut sum = 0.0;
    for (rho, v) in profile.rho().iter().zip(profile.values()) {
        let r2 = rho * rho;
        let psi = 4.0 / ((1.0 + r2) * (1.0 + r2));
        sum += (r2 * v.norm_sqr() - f1 * psi) / (r2 - 1.0);
    }
    sum *= step;
    let l = profile.rho_max();
    let pv = sum - PI * f1 - f1 * subtraction_tail(l);
    Ok(C64::new(pv, -0.5 * PI * f1) / (2.0 * PI * PI))
}

/// FGR hypothesis check: `|G^(1)| > tol`, plus `min |G^|` over `[1 - delta, 1 + delta]`.
pub fn fgr_condition_check(profile: &SpectralProfile, shell: ShellParams) -> (bool, f64) {
    let on_shell = profile.eval(1.0).norm();
    let min = profile
        .rho()
        .iter()
        .zip(profile.values())
        .filter(|(r, _)| (**r - 1.0).abs() <= shell.delta)
        .map(|(_, v)| v.norm())
        .fold(on_shell, f64::min);
    (on_shell > shell.tol, min)
}

impl FgrReport {
    pub fn compute(profile: &SpectralProfile, shell: ShellParams) -> Result<Self> {
        let beta = beta_resolvent(profile)?;
        let gamma = fgr_gamma(profile)?;
        let (fgr_holds, min_abs_on_shell) = fgr_condition_check(profile, shell);
        Ok(Self {
            beta,
            gamma,
            sphere_integral: sphere_integral(profile),
            fgr_holds,
            min_abs_on_shell,
        })
    }

    /// Relative disagreement between `-Im beta` and the delta-shell `Gamma`.
    pub fn agreement(&self) -> f64 {
        let d = (-self.beta.im - self.gamma).abs();
        if self.gamma == 0.0 {
            d
        } else {
            d / self.gamma
        }
    }

    pub fn to_record(&self) -> String {
        format!(
            "beta_re={}\nbeta_im={}\ngamma={}\nsphere_integral={}\nfgr_holds={}\nmin_abs_on_shell={}\n",
            self.beta.re,
            self.beta.im,
            self.gamma,
            self.sphere_integral,
            self.fgr_holds,
            self.min_abs_on_shell
        )
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let mut beta_re = None;
        let mut beta_im = None;
        let mut gamma = None;
        let mut sphere = None;
        let mut holds = None;
        let mut min = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("malformed record line `{line}`")))?;
            let num = || {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad number for `{k}`")))
            };
            match k.trim() {
                "beta_re" => beta_re = Some(num()?),
                "beta_im" => beta_im = Some(num()?),
                "gamma" => gamma = Some(num()?),
                "sphere_integral" => sphere = Some(num()?),
                "min_abs_on_shell" => min = Some(num()?),
                "fgr_holds" => {
                    holds = Some(v.trim().parse::<bool>().map_err(|_| {
                        Error::InvalidArgument("bad boolean for `fgr_holds`".into())
                    })?)
                }
                other => return Err(Error::InvalidArgument(format!("unknown key `{other}`"))),
            }
        }
        let missing = |k: &str| Error::InvalidArgument(format!("missing key `{k}`"));
        Ok(Self {
            beta: C64::new(
                beta_re.ok_or_else(|| missing("beta_re"))?,
                beta_im.ok_or_else(|| missing("beta_im"))?,
            ),
            gamma: gamma.ok_or_else(|| missing("gamma"))?,
            sphere_integral: sphere.ok_or_else(|| missing("sphere_integral"))?,
            fgr_holds: holds.ok_or_else(|| missing("fgr_holds"))?,
            min_abs_on_shell: min.ok_or_else(|| missing("min_abs_on_shell"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{RadialField, RadialGrid};
    use crate::resolvent::profile::{hat_transform, FrequencySampling, SpectralShape};

    fn gaussian_profile(refine: usize) -> SpectralProfile {
        let g = RadialGrid::new(2047, 40.0).unwrap();
        let f = RadialField::sample(&g, |r| (-r * r / 2.0).exp()).unwrap();
        hat_transform(
            &f,
            FrequencySampling {
                rho_max: 16.0,
                refine,
            },
        )
        .unwrap()
    }

    fn bump() -> SpectralProfile {
        SpectralProfile::from_shape(
            SpectralShape::Bump {
                center: 2.0,
                half_width: 0.5,
                amplitude: 10.0,
            },
            FrequencySampling::default(),
        )
        .unwrap()
    }

    #[test]
    fn gaussian_gamma_closed_form() {
        let gamma = fgr_gamma(&gaussian_profile(64)).unwrap();
        let exact = 2.0 * PI * PI / 1f64.exp();
        assert!((gamma - exact).abs() < 1e-9 * exact);
        assert!((gamma - 7.26165).abs() < 1e-5);
    }

    #[test]
    fn shell_vanishing_profile_has_zero_gamma_and_real_beta() {
        let p = bump();
        assert_eq!(fgr_gamma(&p).unwrap(), 0.0);
        let beta = beta_resolvent(&p).unwrap();
        assert_eq!(beta.im, 0.0);
        assert!(beta.re.is_finite() && beta.re > 0.0);
        let (holds, min) = fgr_condition_check(&p, ShellParams::default());
        assert!(!holds);
        assert_eq!(min, 0.0);
    }

    #[test]
    fn gamma_is_quadratic_in_coupling() {
        let g = RadialGrid::new(1023, 30.0).unwrap();
        let f = RadialField::sample(&g, |r| (-r * r / 2.0).exp()).unwrap();
        let s = FrequencySampling::default();
        let g1 = fgr_gamma(&hat_transform(&f, s).unwrap()).unwrap();
        let g2 = fgr_gamma(&hat_transform(&f.scaled(C64::new(2.0, 0.0)), s).unwrap()).unwrap();
        assert!((g2 - 4.0 * g1).abs() < 1e-12 * g2);
    }

    #[test]
    fn gaussian_beta_real_part() {
        // PV integral evaluated independently at 30 digits
        let beta = beta_resolvent(&gaussian_profile(64)).unwrap();
        assert!((beta.re + 0.848_156_737_791_659_8).abs() < 1e-10, "{}", beta.re);
    }

    #[test]
    fn two_gamma_routes_agree() {
        let report = FgrReport::compute(&gaussian_profile(64), ShellParams::default()).unwrap();
        assert!(report.agreement() <= 1e-8, "{}", report.agreement());
        assert!(report.beta.im <= 0.0);
        assert!(report.fgr_holds);
    }

    #[test]
    fn gaussian_condition_check_value() {
        let p = gaussian_profile(64);
        let (holds, _) = fgr_condition_check(&p, ShellParams::default());
        assert!(holds);
        let exact = (2.0 * PI).powf(1.5) * (-0.5f64).exp();
        assert!((p.eval(1.0).norm() - exact).abs() < 1e-8);
        let (holds0, _) = fgr_condition_check(
            &p,
            ShellParams {
                delta: 0.2,
                tol: 0.0,
            },
        );
        assert!(holds0);
    }

    #[test]
    fn beta_converges_under_refinement() {
        // order >= 2: every halving shrinks the error by at least 3.5x until roundoff
        let reference = beta_resolvent(&gaussian_profile(512)).unwrap();
        let mut prev: Option<f64> = None;
        for refine in [8usize, 16, 32, 64] {
            let err = (beta_resolvent(&gaussian_profile(refine)).unwrap() - reference).norm();
            if let Some(p) = prev {
                if p > 1e-12 {
                    assert!(p / err.max(1e-300) >= 3.5, "refine={refine}: {p} -> {err}");
                }
            }
            prev = Some(err);
        }
        assert!(prev.unwrap() < 1e-10);
    }

    #[test]
    fn record_round_trip() {
        let r = FgrReport::compute(&gaussian_profile(32), ShellParams::default()).unwrap();
        let back = FgrReport::from_record(&r.to_record()).unwrap();
        assert_eq!(r, back);
        assert!(FgrReport::from_record("gamma=1\n").is_err());
    }
}
