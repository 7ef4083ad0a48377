//! The skew complementarity example driven by v(t) = (−t, 0): the scheme
//! against the closed form x(t) = 1 + t²/2.
//!
//! cargo run --example example1_ramp

use monotone_evolution::scenario;
use monotone_evolution::timestepper::{solve, SolverConfig};

fn main() -> monotone_evolution::Result<()> {
    let s = scenario::load("example1_ramp")?;
    let op = s.operator()?;
    let mut previous: Option<f64> = None;
    println!("{:>8}  {:>14}  {:>12}  {:>6}", "h", "x(1)", "error", "ratio");
    for h in [1e-1, 5e-2, 2.5e-2, 1.25e-2, 1e-3, 5e-4] {
        let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h))?;
        let err = (traj.final_state()[0] - 1.5).abs();
        let ratio = previous.map_or(String::from("-"), |p| format!("{:.3}", p / err));
        println!("{h:>8}  {:>14.10}  {err:>12.4e}  {ratio:>6}", traj.final_state()[0]);
        previous = Some(err);
    }
    let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(0.25))?;
    print!("\ntrajectory CSV at h = 0.25:\n{}", traj.to_csv());
    Ok(())
}
