//! Resolvents, Yosida approximations and minimal sections of the built-in
//! operator families.
//!
//! cargo run --example resolvent_yosida

use monotone_evolution::geometry::{ConvexSet, MovingSet};
use monotone_evolution::linalg::vector;
use monotone_evolution::operators::{OperatorSpec, ScalarGraph};
use monotone_evolution::signal::Signal;

fn main() -> monotone_evolution::Result<()> {
    let relay = OperatorSpec::scalar_diag(vec![
        ScalarGraph::AbsSubdifferential,
        ScalarGraph::SaturationInverse { limit: 1.0 },
    ])?;
    let x = vector(&[0.7, 1.5]);
    println!("graphs: |.| and sat^-1, x = {:?}", x.as_slice());
    println!("{:>8}  {:>22}  {:>22}", "lambda", "J_lambda x", "F_lambda x");
    for lambda in [1.0, 0.1, 0.01, 0.001] {
        let j = relay.resolvent(0.0, lambda, &x)?;
        let y = relay.yosida(0.0, lambda, &x)?;
        println!("{lambda:>8}  {:>22}  {:>22}", format!("{:.4?}", j.as_slice()), format!("{:.4?}", y.as_slice()));
    }
    println!("F0(x) = {:?}", relay.minimal_section(0.0, &vector(&[0.7, 1.0]))?.as_slice());

    // normal cone of the moving interval [t, t + 2]: J_λ is the projection
    let sweep = OperatorSpec::normal_cone(MovingSet::new(
        ConvexSet::interval(0.0, 2.0)?,
        Some(Signal::scalar(&[(0.0, 0.0), (2.0, 2.0)])?),
        None,
        None,
    )?);
    for t in [0.0, 0.5, 1.5] {
        let j = sweep.resolvent(t, 0.1, &vector(&[1.0]))?;
        println!("sweeping: J(t = {t}) 1 = {}", j[0]);
    }
    Ok(())
}
