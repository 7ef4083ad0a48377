//! A-priori bounds for the sweeping process and a run checked against them.
//!
//! cargo run --example sweeping_certificate

use monotone_evolution::scenario;
use monotone_evolution::signal::Signal;
use monotone_evolution::timestepper::{bound_certificate, certify_run, interpolate, solve, SolverConfig};

fn main() -> monotone_evolution::Result<()> {
    // |x0| = 1, φ(t) = t, σ = 1, T = 1
    let cert = bound_certificate(1.0, Signal::scalar(&[(0.0, 0.0), (1.0, 1.0)])?, 1.0, 1.0)?;
    println!("alpha = {}, beta = {}, gamma = {}, psi(1) = {}", cert.alpha, cert.beta, cert.gamma, cert.psi(1.0));

    let s = scenario::load("sweeping_interval")?;
    let op = s.operator()?;
    let cert = s.bound_certificate()?;
    let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(1e-2))?;
    println!("\nsweeping_interval at h = 1e-2:\n{}", certify_run(&traj, &cert));
    for t in [0.5, 1.005, 1.5] {
        let lin = interpolate(&traj, None, t)?[0];
        let psi = interpolate(&traj, Some(&cert), t)?[0];
        println!("x({t}) ~ {lin:.6} (linear in t), {psi:.6} (linear in psi); exact {}", f64::max(1.0, t));
    }
    Ok(())
}
