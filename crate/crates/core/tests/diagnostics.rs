use std::sync::OnceLock;

mod common;

use nlsode::diagnostics::{
    damping_monitor, duhamel_accumulate, g_decompose, nakanishi_lower_bound, nakanishi_seminorm, scattering_defect,
    strichartz_st, virial_monitor,
};
use nlsode::dynamics::{evolve, Coupling, ModelConfig, SystemState, Trajectory};
use nlsode::radial::{norm, NormKind, RadialField, RadialGrid};
use nlsode::resolvent::{resolvent_apply, ResolventMode};
use nlsode::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coupled run with both a field and the oscillator active, fields at every checkpoint.
fn coupled() -> &'static Trajectory {
    static T: OnceLock<Trajectory> = OnceLock::new();
    T.get_or_init(|| {
        let grid = RadialGrid::new(1023, 100.0).unwrap();
        let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0).unwrap(), 0.01, 6.0).unwrap();
        cfg.checkpoint_stride = 5;
        cfg.field_stride = 1;
        let xi0 = RadialField::sample(&grid, |r| 0.4 * (-r * r / 4.0).exp()).unwrap();
        evolve(&SystemState::new(xi0, C64::new(0.3, 0.1)).unwrap(), &cfg).unwrap()
    })
}

fn damped(n: usize, dt: f64) -> Trajectory {
    let grid = RadialGrid::new(n, 200.0).unwrap();
    let cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0).unwrap(), dt, 30.0).unwrap();
    evolve(&SystemState::new(RadialField::zeros(&grid), C64::new(0.1, 0.0)).unwrap(), &cfg).unwrap()
}

#[test]
fn damping_identity_and_refinement() {
    let coarse = damped(2047, 0.01);
    let fine = damped(4095, 0.005);
    let a = damping_monitor(&coarse, &coarse.config().fgr).unwrap().summary();
    let b = damping_monitor(&fine, &fine.config().fgr).unwrap().summary();
    assert!(a <= 0.1 && b <= 0.1, "{a} {b}");
    assert!(b < a, "{a} -> {b}");
}

#[test]
fn degree_eight_is_degree_two_times_z6() {
    let excess = common::degree_eight_excess(&damped(2047, 0.01));
    assert!(excess <= 1.0, "{excess}");
}

#[test]
fn decomposition_pairing_uses_beta() {
    let traj = coupled();
    let cfg = traj.config();
    let g = cfg.coupling.field();
    let rg = resolvent_apply(g, 0.0, ResolventMode::LimitingAbsorption).unwrap();
    let state = traj.last().state().unwrap();
    let (y, rest) = g_decompose(&state, &rg).unwrap();
    let z = state.z;
    let expect = -z.norm_sqr() * z.conj() * cfg.fgr.beta;
    let got = g.inner_product(&y).unwrap();
    assert!((got - expect).norm() < 1e-8 * expect.norm(), "{got} vs {expect}");
    let sum = &y + &rest;
    assert!(norm(&(&sum - &state.xi), NormKind::L2).unwrap() < 1e-14);
}

#[test]
fn duhamel_reproduces_the_solution() {
    let traj = coupled();
    let (t0, t1) = (1.0, 3.0);
    let u0 = traj.field_at(t0).unwrap();
    let u1 = traj.field_at(t1).unwrap();
    let d = duhamel_accumulate(traj, t0, t1).unwrap();
    assert!(!d.low_accuracy);
    let predicted = &u0.free_propagate(t1 - t0) + &d.value;
    let err = norm(&(&predicted - u1), NormKind::L2).unwrap() / norm(u1, NormKind::L2).unwrap();
    assert!(err < 1e-3, "{err:e}");
}

#[test]
fn strichartz_norm_is_additive_in_the_fourth_power() {
    let traj = coupled();
    let a = strichartz_st(traj, 0.0, 2.0).unwrap().powi(4);
    let b = strichartz_st(traj, 2.0, 5.0).unwrap().powi(4);
    let c = strichartz_st(traj, 0.0, 5.0).unwrap().powi(4);
    assert!((a + b - c).abs() < 1e-12 * c);
}

#[test]
fn seminorm_properties_on_random_triples() {
    let grid = RadialGrid::new(511, 60.0).unwrap();
    let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0).unwrap(), 0.01, 6.0).unwrap();
    cfg.checkpoint_stride = 10;
    cfg.field_stride = 2;
    let xi0 = RadialField::sample(&grid, |r| 0.4 * (-r * r / 4.0).exp()).unwrap();
    let traj = &evolve(&SystemState::new(xi0, C64::new(0.3, 0.1)).unwrap(), &cfg).unwrap();
    let horizon = 6.0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tried = 0;
    while tried < 20 {
        let mut t: Vec<f64> = (0..3).map(|_| (rng.gen_range(0.0..5.0f64) * 5.0).round() / 5.0).collect();
        t.sort_by(f64::total_cmp);
        if t[1] - t[0] < 0.1 || t[2] - t[1] < 0.1 {
            continue;
        }
        tried += 1;
        let n02 = nakanishi_seminorm(traj, t[0], t[2], horizon).unwrap().value;
        let n01 = nakanishi_seminorm(traj, t[0], t[1], horizon).unwrap().value;
        let n12 = nakanishi_seminorm(traj, t[1], t[2], horizon).unwrap().value;
        assert!(n02 <= n01 + n12, "{t:?}: {n02} > {n01} + {n12}");
        assert!(n01 <= n02, "monotone in T1");
        let (before, after) = nakanishi_lower_bound(traj, t[0], t[1], horizon).unwrap();
        assert!(n01 >= before.max(after), "{t:?}");
    }
}

#[test]
fn seminorm_vanishes_on_free_solutions() {
    let grid = RadialGrid::new(511, 60.0).unwrap();
    let mut cfg = ModelConfig::new(Coupling::zero(&grid), 0.01, 3.0).unwrap();
    cfg.cubic_on = false;
    cfg.field_stride = 1;
    let xi0 = RadialField::sample(&grid, |r| (-r * r / 2.0).exp()).unwrap();
    let traj = evolve(&SystemState::new(xi0, C64::new(0.0, 0.0)).unwrap(), &cfg).unwrap();
    let v = nakanishi_seminorm(&traj, 0.0, 2.0, 3.0).unwrap();
    assert!(v.value <= 1e-12, "{:e}", v.value);
}

#[test]
fn virial_residual_converges() {
    let run = |n: usize, dt: f64| {
        let grid = RadialGrid::new(n, 200.0).unwrap();
        let mut cfg = ModelConfig::new(Coupling::gaussian(&grid, 1.0, 1.0).unwrap(), dt, 5.0).unwrap();
        cfg.checkpoint_stride = 5;
        cfg.field_stride = 1;
        let xi0 = RadialField::sample(&grid, |r| 0.3 * (-r * r / 8.0).exp()).unwrap();
        let traj = evolve(&SystemState::new(xi0, C64::new(0.05, 0.0)).unwrap(), &cfg).unwrap();
        virial_monitor(&traj, 50.0).unwrap().summary()
    };
    let a = run(2047, 0.02);
    let b = run(2047, 0.01);
    assert!(a <= 0.05 && b <= 0.05, "{a} {b}");
    assert!(b < 0.5 * a, "{a} -> {b}");
}

#[test]
fn virial_rejects_radius_beyond_box() {
    assert!(virial_monitor(coupled(), 60.0).is_err());
}

#[test]
fn dispersing_field_scatters_and_oscillator_does_not() {
    let traj = coupled();
    let report = scattering_defect(traj, 1e-2).unwrap();
    // |z| ~ 0.3 over the whole run
    assert!(!report.verdict);
    assert!(report.z_sup_tail_at(3.0) > 0.2);
    assert!(report.cauchy_defect.windows(2).all(|w| w[0] >= w[1]));
}
