//! Lemke pivoting, the enumeration oracle, least-norm solutions and
//! dual-cone membership for psd LCPs.
//!
//! cargo run --example lcp_solve

use monotone_evolution::lcp::{dual_cone_membership, ConeCertificate, enumerate_lcp, least_norm_solution, solve_lcp, LcpProblem};
use monotone_evolution::linalg::{matrix, vector};

fn main() -> monotone_evolution::Result<()> {
    // strictly monotone: a unique solution
    let p = LcpProblem::new(vector(&[-1.0, -1.0]), matrix(&[&[2.0, 1.0], &[1.0, 2.0]]))?;
    let sol = solve_lcp(&p)?;
    println!("unique:     z = {:?}, w = {:?}, residual = {:e}, pivots = {}", sol.z.as_slice(), sol.w.as_slice(), sol.residual, sol.pivots);

    // M = [[1, 1], [1, 1]] with q = (−1, −1): a segment of solutions
    let p = LcpProblem::new(vector(&[-1.0, -1.0]), matrix(&[&[1.0, 1.0], &[1.0, 1.0]]))?;
    let sol = solve_lcp(&p)?;
    let all = enumerate_lcp(&p)?;
    println!("segment:    Lemke z = {:?} (unique flag {})", sol.z.as_slice(), sol.unique);
    for s in &all.solutions {
        println!("            vertex  z = {:?}", s.z.as_slice());
    }
    println!("            least-norm z = {:?}", least_norm_solution(&p)?.as_slice());

    // skew-symmetric M: q must lie in the dual cone of Q_M
    let m = matrix(&[&[0.0, 1.0], &[-1.0, 0.0]]);
    for q in [vector(&[1.0, 0.0]), vector(&[-1.0, -1.0])] {
        let report = dual_cone_membership(&q, &m)?;
        let what = match &report.certificate {
            ConeCertificate::Solution(z) => format!("solution z = {:?}", z.as_slice()),
            ConeCertificate::Separator(z) => format!("separator z in Q_M with <q, z> < 0: {:?}", z.as_slice()),
        };
        println!("q = {:?}: member = {}, {what}", q.as_slice(), report.member);
    }
    Ok(())
}
