//! Built-in scenarios serialized to JSON and parsed back; error paths for
//! malformed documents.
//!
//! cargo run --example scenario_roundtrip

use monotone_evolution::scenario::{self, parse_scenario, BUILTIN_NAMES};

fn main() -> monotone_evolution::Result<()> {
    for name in BUILTIN_NAMES {
        let s = scenario::builtin(name).expect("built-in");
        let back = parse_scenario(&s.to_json())?;
        println!("{name:<18} n = {}  round-trip = {}", s.dim(), back == s);
    }
    println!("\n{}", scenario::builtin("sweeping_interval").expect("built-in").to_json());

    let broken = r#"{"name": "x", "horizon": 1.0, "operator": {"kind": "scalar_graph_diag", "graphs": [{"type": "abs"}]}}"#;
    println!("\nmissing x0: {}", parse_scenario(broken).unwrap_err());
    let refused = r#"{"name": "unstable", "horizon": 1.0, "x0": [0.0],
        "operator": {"kind": "lcs", "a": [[1.0]], "b": [[1.0]], "c": [[1.0]], "d": [[0.0]]}}"#;
    let err = parse_scenario(refused).unwrap_err();
    println!("gate refusal (exit code {}):\n{err}", err.exit_code());
    Ok(())
}
