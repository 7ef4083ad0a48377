//! `mevo`: command-line front end for the evolution-inclusion solver.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use monotone_evolution::lcp::{self, LcpProblem, LcpStatus};
use monotone_evolution::oracle::{assumption_probe, Assumption, Declared};
use monotone_evolution::scenario::{self, Scenario};
use monotone_evolution::timestepper::{self, certify_run, refine_study, Mode, Partition, SolverConfig};
use monotone_evolution::operators::OperatorSpec;
use monotone_evolution::{Error, Result};

/// Number of probe intervals on `[0, T]`.
const PROBE_INTERVALS: usize = 50;
const PROBE_SAMPLES: usize = 200;

#[derive(Parser)]
#[command(name = "mevo", version, about = "Time-stepping for evolution inclusions with moving monotone operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario and print (or write) the trajectory CSV.
    Solve {
        /// Scenario file or built-in name.
        scenario: String,
        #[arg(long, default_value_t = 1e-2)]
        h: f64,
        #[arg(long, default_value = "semi_implicit")]
        mode: Mode,
        /// Project x0 onto dom F(0, ·) instead of rejecting it.
        #[arg(long)]
        project_x0: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mesh-refinement study at h0, h0/2, …
    Refine {
        scenario: String,
        #[arg(long)]
        h0: f64,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
    /// Solve a psd LCP from a JSON file `{"m": [[…]], "q": […]}`.
    Lcp { problem: PathBuf },
    /// Print the hypothesis report of an LCS scenario.
    Passivity { scenario: String },
    /// Seeded sampling check of one standing assumption.
    Probe {
        scenario: String,
        #[arg(long)]
        assumption: Assumption,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a run against the a-priori bound certificate.
    Certify {
        scenario: String,
        #[arg(long)]
        h: f64,
    },
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn load(spec: &str) -> Result<(Scenario, OperatorSpec)> {
    let s = scenario::load_unchecked(spec)?;
    let op = s.operator()?;
    Ok((s, op))
}


fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            scenario,
            h,
            mode,
            project_x0,
            out,
        } => {
            let (s, op) = load(&scenario)?;
            let cfg = SolverConfig::uniform(h).with_mode(mode).with_project_x0(project_x0);
            let traj = timestepper::solve(&op, &s.x0_vector(), s.horizon, &cfg)?;
            match out {
                Some(path) => {
                    traj.write_csv(&path)?;
                    println!("scenario = {}", s.name);
                    println!("steps = {}", traj.partition().steps());
                    println!("final_state = {}", fmt_vec(traj.final_state().as_slice()));
                    println!("total_pivots = {}", traj.total_pivots());
                    println!("csv = {}", path.display());
                }
                None => print!("{}", traj.to_csv()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Refine { scenario, h0, levels } => {
            let (s, op) = load(&scenario)?;
            let cfg = SolverConfig::uniform(h0);
            let report = refine_study(&op, &s.x0_vector(), s.horizon, h0, levels, &cfg)?;
            println!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Lcp { problem } => {
            let p = LcpProblem::from_json(&std::fs::read_to_string(&problem)?)?;
            let sol = lcp::solve_lcp(&p)?;
            if sol.status != LcpStatus::Solved {
                let report = lcp::dual_cone_membership(p.q(), p.m()).ok();
                println!("status = infeasible");
                println!("pivots = {}", sol.pivots);
                match report.map(|r| r.certificate) {
                    Some(lcp::ConeCertificate::Separator(z)) => println!("separator = {}", fmt_vec(z.as_slice())),
                    Some(lcp::ConeCertificate::Solution(z)) => println!("solution = {}", fmt_vec(z.as_slice())),
                    None => {}
                }
                return Ok(ExitCode::from(4));
            }
            println!("status = solved");
            println!("z = {}", fmt_vec(sol.z.as_slice()));
            println!("w = {}", fmt_vec(sol.w.as_slice()));
            println!("residual = {:e}", sol.residual);
            println!("pivots = {}", sol.pivots);
            println!("unique = {}", sol.unique);
            Ok(ExitCode::SUCCESS)
        }
        Command::Passivity { scenario } => {
            // the report is printed even when the gate refuses the system
            let s = scenario::load_unchecked(&scenario)?;
            let Some(report) = s.hypothesis_report() else {
                return Err(Error::InvalidArgument(format!("scenario `{}` is not an LCS scenario", s.name)));
            };
            let report = report?;
            println!("{report}");
            Ok(if report.overall { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Probe {
            scenario,
            assumption,
            seed,
        } => {
            let (s, op) = load(&scenario)?;
            let grid = Partition::uniform(s.horizon, s.horizon / PROBE_INTERVALS as f64)?;
            let declared = Declared {
                phi: s.phi_signal().transpose()?,
                sigma: s.sigma,
            };
            let report = assumption_probe(&op, &grid, PROBE_SAMPLES, seed, &declared)?;
            println!("{}", report.key_values(assumption));
            Ok(match report.holds(assumption) {
                Some(false) => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Certify { scenario, h } => {
            let (s, op) = load(&scenario)?;
            let cert = s.bound_certificate()?;
            let traj = timestepper::solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h))?;
            let report = certify_run(&traj, &cert);
            println!("alpha = {}", cert.alpha);
            println!("gamma = {}", cert.gamma);
            println!("{report}");
            Ok(if report.holds() { ExitCode::SUCCESS } else { ExitCode::from(4) })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
