//! Seeded probes of the standing assumptions and of trajectory contraction.
//!
//! cargo run --example assumption_probes

use monotone_evolution::oracle::{assumption_probe, contraction_probe, Declared};
use monotone_evolution::scenario;
use monotone_evolution::timestepper::{Partition, SolverConfig};

fn main() -> monotone_evolution::Result<()> {
    for name in ["sweeping_interval", "gradient_flow", "example1_ramp", "relay_feedback"] {
        let s = scenario::load(name)?;
        let op = s.operator()?;
        let grid = Partition::uniform(s.horizon, s.horizon / 20.0)?;
        let declared = Declared {
            phi: s.phi_signal().transpose()?,
            sigma: s.sigma,
        };
        let probes = assumption_probe(&op, &grid, 100, 42, &declared)?;
        let contraction = contraction_probe(&op, s.horizon, 20, 42, &SolverConfig::uniform(0.05))?;
        println!("== {name}\n{probes}\n-- contraction\n{contraction}\n");
    }
    Ok(())
}
