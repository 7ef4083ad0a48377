//! The `dis` pseudo-distance between two graphs, bounded below from samples.
//!
//! cargo run --example dis_lower_bound

use monotone_evolution::linalg::vector;
use monotone_evolution::operators::{dis_lower_bound, GraphSample};

fn main() -> monotone_evolution::Result<()> {
    // one sample point on each graph: (x₁, y₁) = (ρ + 1, 0), (x₂, y₂) = (0, 1)
    for rho in [0.0, 1.0, 10.0] {
        let g1 = GraphSample::unverified(vec![(vector(&[rho + 1.0]), vector(&[0.0]))])?;
        let g2 = GraphSample::unverified(vec![(vector(&[0.0]), vector(&[1.0]))])?;
        println!("rho = {rho:>4}: dis >= {}", dis_lower_bound(&g1, &g2)?);
    }
    Ok(())
}
