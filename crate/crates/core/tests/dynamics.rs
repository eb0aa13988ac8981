use nlsode::dynamics::io::{read_trajectory, write_trajectory};
use nlsode::dynamics::{energy, evolve, mass, rhs, step, Coupling, ModelConfig, SystemState};
use nlsode::radial::{norm, NormKind, RadialField, RadialGrid};
use nlsode::{Error, C64};

fn grid() -> RadialGrid {
    RadialGrid::new(1023, 100.0).unwrap()
}

fn initial(grid: &RadialGrid, amp: f64, z: C64) -> SystemState {
    let xi = RadialField::sample(grid, |r| amp * (-r * r / 2.0).exp()).unwrap();
    SystemState::new(xi, z).unwrap()
}

fn config(grid: &RadialGrid, dt: f64, t_end: f64) -> ModelConfig {
    ModelConfig::new(Coupling::gaussian(grid, 1.0, 1.0).unwrap(), dt, t_end).unwrap()
}

#[test]
fn energy_drift_is_second_order() {
    let g = grid();
    let init = initial(&g, 0.2, C64::new(0.1, 0.0));
    let drift = |dt: f64| {
        let traj = evolve(&init, &config(&g, dt, 5.0)).unwrap();
        traj.max_energy_drift()
    };
    let (a, b) = (drift(0.02), drift(0.01));
    assert!(a < 1e-5 && b < 1e-6, "{a:e} {b:e}");
    let ratio = a / b;
    assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn mass_drift_is_at_rk4_accuracy() {
    // the coupling sub-step is RK4: mass error O(t dt^4), not exact
    let g = grid();
    let init = initial(&g, 0.3, C64::new(0.2, 0.1));
    let traj = evolve(&init, &config(&g, 0.01, 5.0)).unwrap();
    assert!(traj.max_mass_drift() < 1e-10, "{:e}", traj.max_mass_drift());
}

#[test]
fn gauge_covariance() {
    let g = grid();
    let init = initial(&g, 0.3, C64::new(0.1, 0.05));
    let cfg = config(&g, 0.01, 3.0);
    let rot = C64::from_polar(1.0, 0.7);
    let a = evolve(&init, &cfg).unwrap();
    let b = evolve(&init.rotated(0.7), &cfg).unwrap();
    for (x, y) in a.checkpoints().iter().zip(b.checkpoints()) {
        assert!((x.z * rot - y.z).norm() < 1e-9);
        if let (Some(u), Some(v)) = (&x.xi, &y.xi) {
            let d = norm(&(&u.scaled(rot) - v), NormKind::L2).unwrap();
            assert!(d < 1e-9, "{d:e}");
        }
    }
}

#[test]
fn steps_are_reversible() {
    let g = grid();
    let init = initial(&g, 0.3, C64::new(0.1, 0.0));
    let cfg = config(&g, 0.01, 1.0);
    let mut s = init.clone();
    for _ in 0..50 {
        s = step(&s, 0.01, &cfg).unwrap();
    }
    for _ in 0..50 {
        s = step(&s, -0.01, &cfg).unwrap();
    }
    assert!(norm(&(&s.xi - &init.xi), NormKind::L2).unwrap() < 1e-10);
    assert!((s.z - init.z).norm() < 1e-10);
}

#[test]
fn decoupled_oscillator_rotates() {
    let g = grid();
    let mut cfg = ModelConfig::new(Coupling::zero(&g), 0.01, 2.0).unwrap();
    cfg.cubic_on = false;
    let traj = evolve(&SystemState::new(RadialField::zeros(&g), C64::new(0.3, 0.0)).unwrap(), &cfg).unwrap();
    let last = traj.last();
    // RK4 phase error ~ |z| t dt^4 / 120
    let e = (last.z - C64::from_polar(0.3, -2.0)).norm();
    assert!(e < 1e-10, "{e:e}");
}

#[test]
fn rhs_of_free_field_is_laplacian() {
    let g = grid();
    let mut cfg = ModelConfig::new(Coupling::zero(&g), 0.01, 1.0).unwrap();
    cfg.cubic_on = false;
    let s = initial(&g, 1.0, C64::new(0.0, 0.0));
    let (dxi, dz) = rhs(&s, &cfg).unwrap();
    let expect = s.xi.neg_laplacian().scaled(C64::new(0.0, -1.0));
    assert!(norm(&(&dxi - &expect), NormKind::L2).unwrap() < 1e-12);
    assert_eq!(dz, C64::new(0.0, 0.0));
}

#[test]
fn invariants_at_the_origin_state() {
    let g = grid();
    let s = SystemState::new(RadialField::zeros(&g), C64::new(0.1, 0.0)).unwrap();
    let cfg = config(&g, 0.01, 1.0);
    assert!((mass(&s) - 0.01).abs() < 1e-16);
    // oscillator energy alone
    assert!((energy(&s, cfg.coupling.field()).unwrap() - 0.01).abs() < 1e-16);
}

#[test]
fn ceiling_aborts_with_last_good_time() {
    let g = grid();
    let mut cfg = config(&g, 0.01, 1.0);
    cfg.l4_ceiling = 1e-8;
    let init = initial(&g, 1.0, C64::new(0.0, 0.0));
    match evolve(&init, &cfg) {
        Err(Error::Aborted { last_good, .. }) => assert_eq!(last_good, 0.0),
        other => panic!("expected abort, got {other:?}"),
    }
}

#[test]
fn trajectory_survives_disk_round_trip() {
    let g = RadialGrid::new(255, 40.0).unwrap();
    let mut cfg = config(&g, 0.01, 0.5);
    cfg.field_stride = 2;
    let traj = evolve(&initial(&g, 0.2, C64::new(0.1, 0.0)), &cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_trajectory(dir.path(), &traj).unwrap();
    let back = read_trajectory(dir.path(), cfg).unwrap();
    assert_eq!(back.checkpoints(), traj.checkpoints());
}

#[test]
fn zero_horizon_gives_single_checkpoint() {
    let g = grid();
    let traj = evolve(&initial(&g, 0.2, C64::new(0.1, 0.0)), &config(&g, 0.01, 0.0)).unwrap();
    assert_eq!(traj.len(), 1);
}
