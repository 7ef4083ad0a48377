//! Relay feedback with a rotating affine field: semi-implicit vs. Picard
//! steps, and the trajectory written as CSV.
//!
//! cargo run --example relay_feedback

use monotone_evolution::scenario;
use monotone_evolution::timestepper::{interpolant_distance, solve, Mode, SolverConfig};

fn main() -> monotone_evolution::Result<()> {
    let s = scenario::load("relay_feedback")?;
    let op = s.operator()?;
    let h = 0.01;
    let semi = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h))?;
    let picard = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h).with_mode(Mode::Picard))?;
    let iterations: usize = picard.diagnostics().iter().map(|d| d.picard_iterations).sum();
    println!("x(T) semi-implicit = {:?}", semi.final_state().as_slice());
    println!("x(T) picard        = {:?} ({iterations} fixed-point iterations)", picard.final_state().as_slice());
    println!("sup distance       = {:e}", interpolant_distance(&semi, &picard)?);
    let path = std::env::temp_dir().join("relay_feedback.csv");
    semi.write_csv(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
