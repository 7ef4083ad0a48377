//! Passivity-based hypothesis checks for linear complementarity systems.
//!
//! cargo run --example passivity_report

use monotone_evolution::linalg::matrix;
use monotone_evolution::passivity::{kernel_condition, kyp_check_identity};
use monotone_evolution::scenario;

fn main() -> monotone_evolution::Result<()> {
    for name in ["example1_ramp", "diode_bridge"] {
        let s = scenario::builtin(name).expect("built-in");
        let report = s.hypothesis_report().expect("LCS scenario")?;
        println!("== {name}\n{report}\n");
    }

    // ẋ = x + s, w = x: not passive with storage |x|²/2
    let one = matrix(&[&[1.0]]);
    let zero = matrix(&[&[0.0]]);
    let kyp = kyp_check_identity(&one, &one, &one, &zero)?;
    println!("A = B = C = 1, D = 0: passive = {}, margin = {:e}", kyp.passive, kyp.margin);
    let kernel = kernel_condition(&one, &matrix(&[&[2.0]]), &zero);
    println!("B = 1, C = 2, D = 0: kernel condition = {} (worst {:e})", kernel.holds, kernel.worst);
    Ok(())
}
