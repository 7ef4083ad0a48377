use monotone_evolution::lcp::enumerate_lcp;
use monotone_evolution::scenario::{self, AffineDescription, BUILTIN_NAMES};
use monotone_evolution::timestepper::{certify_run, interpolate, solve, LcsStepProblem, Mode, Partition, SolverConfig};

#[test]
fn iterates_stay_in_the_domain() {
    for name in BUILTIN_NAMES {
        let s = scenario::load(name).unwrap();
        let op = s.operator().unwrap();
        let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(s.horizon / 200.0)).unwrap();
        for (k, (t, x)) in traj.times().iter().zip(traj.states()).enumerate().skip(1) {
            let d = op.domain_distance(*t, x).unwrap();
            assert!(d <= 1e-8, "{name}: step {k} is {d:e} outside the domain");
        }
    }
}

#[test]
fn psi_interpolant_respects_the_certificate() {
    for name in ["sweeping_interval", "gradient_flow"] {
        let s = scenario::load(name).unwrap();
        let op = s.operator().unwrap();
        let cert = s.bound_certificate().unwrap();
        let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(0.013)).unwrap();
        assert!(certify_run(&traj, &cert).holds(), "{name}");
        let ts: Vec<f64> = (0..=97).map(|i| s.horizon * i as f64 / 97.0).collect();
        for (i, &a) in ts.iter().enumerate() {
            for &b in &ts[i + 1..] {
                let gap = (interpolate(&traj, Some(&cert), b).unwrap() - interpolate(&traj, Some(&cert), a).unwrap()).norm();
                assert!(gap <= cert.psi(b) - cert.psi(a) + 1e-9, "{name}: |x(b) - x(a)| = {gap} at ({a}, {b})");
            }
        }
    }
}

#[test]
fn picard_and_semi_implicit_differ_by_order_h() {
    let mut s = scenario::builtin("gradient_flow").unwrap();
    s.lipschitz_f = Some(AffineDescription {
        matrix: vec![vec![0.3]],
        offset: vec![0.5],
    });
    let op = s.operator().unwrap();
    let constants: Vec<f64> = [0.04, 0.02, 0.01, 0.005]
        .iter()
        .map(|&h| {
            let a = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h)).unwrap();
            let b = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h).with_mode(Mode::Picard)).unwrap();
            let gap = a.states().iter().zip(b.states()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            gap / h
        })
        .collect();
    assert!(constants.iter().all(|&c| c > 0.0), "{constants:?}");
    for w in constants.windows(2) {
        assert!(w[1] <= 1.2 * w[0] && w[1] >= 0.5 * w[0], "unstable constants {constants:?}");
    }
}

#[test]
fn lcs_steps_do_not_depend_on_the_chosen_multiplier() {
    for name in ["example1_ramp", "diode_bridge"] {
        let s = scenario::load(name).unwrap();
        let sys = s.lcs_system().unwrap().unwrap();
        let op = s.operator().unwrap();
        let h = 0.05;
        let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h)).unwrap();
        for k in 0..traj.partition().steps() {
            let (t_next, hk) = (traj.times()[k + 1], traj.partition().step(k + 1));
            let sp = LcsStepProblem::new(&sys, t_next, hk, traj.state(k)).unwrap();
            for sol in enumerate_lcp(&sp.problem).unwrap().solutions {
                let d = (sp.state_for(&sol.z) - traj.state(k + 1)).norm();
                assert!(d <= 1e-8, "{name}: step {k} differs by {d:e}");
            }
        }
    }
}

#[test]
fn uniform_partition_covers_the_horizon() {
    let p = Partition::uniform(1.0, 0.3).unwrap();
    assert_eq!(p.steps(), 4);
    assert!((p.horizon() - 1.0).abs() < 1e-15);
    assert!((p.step(4) - 0.1).abs() < 1e-12);
    let total: f64 = (1..=p.steps()).map(|k| p.step(k)).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert!(Partition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
}

#[test]
fn csv_has_state_and_multiplier_columns() {
    let s = scenario::load("diode_bridge").unwrap();
    let traj = solve(&s.operator().unwrap(), &s.x0_vector(), s.horizon, &SolverConfig::uniform(0.5)).unwrap();
    let csv = traj.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,x_1,x_2,z_1,z_2,z_3,z_4");
    assert_eq!(lines.clone().count(), traj.times().len());
    assert!(lines.next().unwrap().ends_with(",,,,"));
}

#[test]
fn out_of_domain_start_is_rejected_unless_projected() {
    let s = scenario::load("sweeping_interval").unwrap();
    let op = s.operator().unwrap();
    let x0 = monotone_evolution::linalg::vector(&[5.0]);
    let err = solve(&op, &x0, s.horizon, &SolverConfig::uniform(0.1)).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    let traj = solve(&op, &x0, s.horizon, &SolverConfig::uniform(0.1).with_project_x0(true)).unwrap();
    assert!((traj.state(0)[0] - 2.0).abs() < 1e-12);
}
