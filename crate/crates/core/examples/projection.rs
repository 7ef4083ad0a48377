//! Projections onto boxes, balls and polyhedra, and Hausdorff distances.
//!
//! cargo run --example projection

use monotone_evolution::geometry::{hausdorff_distance, ConvexSet, Polyhedron};
use monotone_evolution::linalg::{matrix, vector};

fn main() -> monotone_evolution::Result<()> {
    let x = vector(&[3.0, -0.5]);

    let unit_box = ConvexSet::boxed(vector(&[0.0, 0.0]), vector(&[1.0, 1.0]))?;
    let ball = ConvexSet::ball(vector(&[0.0, 0.0]), 1.0)?;
    // triangle x ≥ 0, y ≥ 0, x + y ≤ 1, projected by Dykstra sweeps
    let triangle = ConvexSet::polyhedron(Polyhedron::new(
        matrix(&[&[-1.0, 0.0], &[0.0, -1.0], &[1.0, 1.0]]),
        vector(&[0.0, 0.0, 1.0]),
    )?);

    for (name, set) in [("box", &unit_box), ("ball", &ball), ("triangle", &triangle)] {
        let p = set.project(&x)?;
        println!("P_{name}({:?}) = {:?}  dist = {:.6}", x.as_slice(), p.as_slice(), set.distance(&x)?);
    }

    let shifted = ConvexSet::translate(unit_box.clone(), vector(&[0.25, 0.0]))?;
    println!("d_H(box, box + 1/4)   = {:.6}", hausdorff_distance(&unit_box, &shifted)?);
    let big = ConvexSet::ball(vector(&[0.5, 0.0]), 2.0)?;
    println!("d_H(ball, ball')      = {:.6}", hausdorff_distance(&ball, &big)?);
    // mixed shapes have no exact formula and are refused
    println!("d_H(box, triangle)    : {}", hausdorff_distance(&unit_box, &triangle).unwrap_err());
    Ok(())
}
