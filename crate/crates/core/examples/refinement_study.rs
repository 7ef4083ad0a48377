//! Mesh-refinement study: successive differences and empirical orders.
//!
//! cargo run --example refinement_study

use monotone_evolution::scenario;
use monotone_evolution::timestepper::{refine_study, SolverConfig};

fn main() -> monotone_evolution::Result<()> {
    for (name, h0) in [("sweeping_interval", 0.3), ("example1_ramp", 0.1), ("relay_feedback", 0.1)] {
        let s = scenario::load(name)?;
        let op = s.operator()?;
        let report = refine_study(&op, &s.x0_vector(), s.horizon, h0, 5, &SolverConfig::uniform(h0))?;
        println!("== {name}\n{report}\n");
    }
    Ok(())
}
