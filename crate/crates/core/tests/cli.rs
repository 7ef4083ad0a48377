use std::path::PathBuf;
use std::process::{Command, Output};

fn mevo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mevo")).args(args).output().expect("mevo runs")
}

fn code(args: &[&str]) -> i32 {
    mevo(args).status.code().expect("exit code")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mevo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["solve", "no_such_scenario"]), 2);
    let broken = scratch("broken.json", "{\"name\": \"x\", \"horizon\": ");
    assert_eq!(code(&["solve", broken.to_str().unwrap()]), 2);
    let unstable = scratch(
        "unstable.json",
        r#"{"name": "unstable", "horizon": 1.0, "x0": [0.0],
            "operator": {"kind": "lcs", "a": [[1.0]], "b": [[1.0]], "c": [[1.0]], "d": [[0.0]]}}"#,
    );
    assert_eq!(code(&["passivity", unstable.to_str().unwrap()]), 3);
    assert_eq!(code(&["solve", unstable.to_str().unwrap()]), 3);
    let infeasible = scratch("infeasible.json", r#"{"m": [[0.0, 1.0], [-1.0, 0.0]], "q": [-1.0, -1.0]}"#);
    assert_eq!(code(&["lcp", infeasible.to_str().unwrap()]), 4);
    let indefinite = scratch("indefinite.json", r#"{"m": [[-1.0]], "q": [1.0]}"#);
    assert_eq!(code(&["lcp", indefinite.to_str().unwrap()]), 3);
    assert_eq!(code(&["certify", "example1_ramp", "--h", "0.1"]), 2);
    assert_eq!(code(&["solve", "relay_feedback", "--mode", "picard", "--h", "10"]), 2);
    assert_eq!(code(&["solve", "gradient_flow", "--h", "-1"]), 2);
}

#[test]
fn lcp_reports_solution() {
    let p = scratch("easy.json", r#"{"m": [[2.0, 1.0], [1.0, 2.0]], "q": [-1.0, 1.0]}"#);
    let out = mevo(&["lcp", p.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status = solved"));
    assert!(text.contains("z = [5e-1, 0e0]"), "{text}");
}

#[test]
fn solve_writes_csv() {
    let out_path = std::env::temp_dir().join(format!("mevo-cli-{}-traj.csv", std::process::id()));
    let out = mevo(&["solve", "example1_ramp", "--h", "0.1", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(csv.lines().next(), Some("t,x_1,z_1,z_2"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let steps: usize = stdout.lines().find_map(|l| l.strip_prefix("steps = ")).unwrap().parse().unwrap();
    assert_eq!(csv.lines().count(), steps + 2);
}

#[test]
fn probe_is_deterministic() {
    let args = ["probe", "sweeping_interval", "--assumption", "a2", "--seed", "7"];
    let (a, b) = (mevo(&args), mevo(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn refine_and_certify_succeed_on_builtins() {
    assert_eq!(code(&["refine", "example1_ramp", "--h0", "0.3", "--levels", "3"]), 0);
    assert_eq!(code(&["certify", "sweeping_interval", "--h", "0.05"]), 0);
    assert_eq!(code(&["passivity", "diode_bridge"]), 0);
}
