//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines are always shown.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monotone_evolution::geometry::{ConvexSet, MovingSet, Polyhedron};
use monotone_evolution::lcp::simplex::{maximize, LpOutcome};
use monotone_evolution::lcp::{dual_cone_membership, enumerate_lcp, solve_lcp, LcpProblem, LcpStatus};
use monotone_evolution::linalg::{matrix, vector, Matrix, Vector};
use monotone_evolution::operators::{dis_lower_bound, GraphSample, OperatorSpec, ScalarGraph};
use monotone_evolution::oracle::contraction_probe;
use monotone_evolution::passivity::{build_lcs_operator, kernel_condition, kyp_check_identity, LcsSystem};
use monotone_evolution::scenario;
use monotone_evolution::signal::Signal;
use monotone_evolution::timestepper::{bound_certificate, certify_run, refine_study, solve, LcsStepProblem, SolverConfig};
use monotone_evolution::Error;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn mevo(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mevo"))
        .args(args)
        .output()
        .expect("mevo runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn value_of(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.trim_start().strip_prefix('=').map(|v| v.trim().to_string()))
}

fn final_x(csv: &str) -> f64 {
    let last = csv.lines().last().expect("csv rows");
    last.split(',').nth(1).expect("x_1 column").parse().expect("number")
}

fn rand_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, bound: f64) -> Matrix {
    Matrix::from_fn(r, c, |_, _| rng.gen_range(-bound..=bound))
}

fn rand_vector(rng: &mut ChaCha8Rng, n: usize, bound: f64) -> Vector {
    Vector::from_fn(n, |_, _| rng.gen_range(-bound..=bound))
}

fn skew(rng: &mut ChaCha8Rng, n: usize, bound: f64) -> Matrix {
    let k = rand_matrix(rng, n, n, bound);
    (&k - k.transpose()) * 0.5
}

// ---------------------------------------------------------------- 1

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let (code, csv) = mevo(&["solve", "example1_ramp", "--h", "1e-3"]);
    let elapsed = started.elapsed().as_secs_f64();
    if code != 0 {
        return Err(format!("solve exited with {code}"));
    }
    let x1 = final_x(&csv);
    let err = (x1 - 1.5).abs();

    let s = scenario::load("example1_ramp").map_err(|e| e.to_string())?;
    let op = s.operator().map_err(|e| e.to_string())?;
    let run = |h: f64| solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h)).map(|t| t.final_state()[0]);
    let half = run(5e-4).map_err(|e| e.to_string())?;
    let reference = run(1e-5).map_err(|e| e.to_string())?;
    let ratio = err / (half - 1.5).abs();
    let ref_gap = (reference - 1.5).abs();
    check(
        err <= 5e-3 && (1.6..=2.4).contains(&ratio) && elapsed < 5.0 && ref_gap <= 1e-4,
        format!("|x(1)-1.5| = {err:.3e}, halving ratio {ratio:.3}, runtime {elapsed:.2}s, h=1e-5 reference gap {ref_gap:.1e}"),
    )
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let s = scenario::load("sweeping_interval").map_err(|e| e.to_string())?;
    let op = s.operator().map_err(|e| e.to_string())?;
    let mut worst_ratio = 0.0_f64;
    for h in [0.3, 0.1, 0.03, 1e-2, 1e-3] {
        let traj = solve(&op, &s.x0_vector(), s.horizon, &SolverConfig::uniform(h)).map_err(|e| e.to_string())?;
        let err = traj
            .times()
            .iter()
            .zip(traj.states())
            .map(|(&t, x)| (x[0] - t.max(1.0)).abs())
            .fold(0.0, f64::max);
        worst_ratio = worst_ratio.max(err / h);
    }

    let (code, out) = mevo(&["refine", "sweeping_interval", "--h0", "0.3", "--levels", "4"]);
    if code != 0 {
        return Err(format!("refine exited with {code}"));
    }
    let orders: Vec<f64> = out
        .lines()
        .skip(1)
        .filter_map(|l| l.split_whitespace().nth(4)?.parse().ok())
        .collect();
    let lib = refine_study(&op, &s.x0_vector(), s.horizon, 0.3, 4, &SolverConfig::uniform(0.3)).map_err(|e| e.to_string())?;
    let in_band = |o: &[f64]| !o.is_empty() && o.iter().all(|o| (0.7..=1.3).contains(o));
    check(
        worst_ratio <= 2.0 && in_band(&orders) && in_band(&lib.orders()),
        format!("max grid error / h = {worst_ratio:.3} (<= 2), refine orders {orders:?}"),
    )
}

// ---------------------------------------------------------------- 3

/// Inf-norm distance from `z` to the convex hull of `points`, by LP.
fn hull_distance(z: &Vector, points: &[Vector]) -> f64 {
    let n = z.len();
    let k = points.len();
    // variables (λ₁..λ_k, s): maximize −s
    let mut c = Vector::zeros(k + 1);
    c[k] = -1.0;
    let mut a = Matrix::zeros(k + 2 * n, k + 1);
    let mut b = Vector::zeros(k + 2 * n);
    for j in 0..k {
        a[(j, j)] = -1.0;
    }
    for i in 0..n {
        for (j, p) in points.iter().enumerate() {
            a[(k + i, j)] = p[i];
            a[(k + n + i, j)] = -p[i];
        }
        a[(k + i, k)] = -1.0;
        a[(k + n + i, k)] = -1.0;
        b[k + i] = z[i];
        b[k + n + i] = -z[i];
    }
    let mut e = Matrix::zeros(1, k + 1);
    for j in 0..k {
        e[(0, j)] = 1.0;
    }
    match maximize(&c, &a, &b, &e, &vector(&[1.0])) {
        LpOutcome::Optimal { value, .. } => -value,
        _ => f64::INFINITY,
    }
}

fn random_passive_system(rng: &mut ChaCha8Rng) -> (Matrix, Matrix, Matrix, Matrix) {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=4);
    let rank = rng.gen_range(1..=n + m);
    let l = rand_matrix(rng, n + m, rank, 1.0);
    let block = -(&l * l.transpose());
    let c = rand_matrix(rng, m, n, 1.0);
    let a = block.view((0, 0), (n, n)) * 0.5 + skew(rng, n, 1.0);
    let b = c.transpose() + block.view((0, n), (n, m));
    let d = block.view((n, n), (m, m)) * -0.5 + skew(rng, m, 1.0);
    (a, b, c, d)
}

#[derive(Default)]
struct LcpTally {
    solved: usize,
    infeasible: usize,
    disagreements: usize,
    multi: usize,
    worst_residual: f64,
    worst_hull: f64,
    worst_spread: f64,
}

impl LcpTally {
    fn record(&mut self, mm: &Matrix, q: &Vector) -> Result<(), String> {
        let p = LcpProblem::new(q.clone(), mm.clone()).map_err(|e| e.to_string())?;
        let sol = solve_lcp(&p).map_err(|e| e.to_string())?;
        let all = enumerate_lcp(&p).map_err(|e| e.to_string())?;
        if sol.status != LcpStatus::Solved {
            self.infeasible += 1;
            let cert = dual_cone_membership(q, mm).map_err(|e| e.to_string())?;
            if !all.is_infeasible() || cert.member || !cert.verify(q, mm, 1e-9) {
                self.disagreements += 1;
            }
            return Ok(());
        }
        self.solved += 1;
        self.worst_residual = self.worst_residual.max(sol.residual / (1.0 + q.norm()));
        let points: Vec<Vector> = all.solutions.iter().map(|s| s.z.clone()).collect();
        self.worst_hull = self.worst_hull.max(hull_distance(&sol.z, &points));
        if points.iter().any(|z| (z - &sol.z).norm() > 1e-9) {
            self.multi += 1;
            let sym = mm + mm.transpose();
            for z in &points {
                let d = z - &sol.z;
                self.worst_spread = self.worst_spread.max((&sym * &d).norm()).max(q.dot(&d).abs());
            }
        }
        Ok(())
    }

    fn ok(&self) -> bool {
        self.worst_residual <= 1e-9 && self.worst_hull <= 1e-7 && self.worst_spread <= 1e-8 && self.disagreements == 0
    }

    fn summary(&self, name: &str) -> String {
        format!(
            "{name}: {} solved/{} infeasible ({} disagreements), residual {:.1e}, hull {:.1e}, spread {:.1e} on {} multi-solution",
            self.solved, self.infeasible, self.disagreements, self.worst_residual, self.worst_hull, self.worst_spread, self.multi
        )
    }
}

/// Passive system with `D = 0` and more multipliers than states, so every
/// step matrix `M_h = hC(I − hA)⁻¹B` is singular.
fn degenerate_passive_system(rng: &mut ChaCha8Rng) -> (Matrix, Matrix, Matrix, Matrix) {
    let n = rng.gen_range(1..=3);
    let m = n + rng.gen_range(1..=3);
    let l = rand_matrix(rng, n, n, 1.0);
    let a = -(&l * l.transpose()) * 0.5 + skew(rng, n, 1.0);
    let c = rand_matrix(rng, m, n, 1.0);
    (a, c.transpose(), c, Matrix::zeros(m, m))
}

fn criterion_3() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // stated distribution: M = RRᵀ + skew, entries of R, skew part and q in [−2, 2]
    let mut random = LcpTally::default();
    for _ in 0..1000 {
        let m = rng.gen_range(1..=6);
        let rr = rand_matrix(&mut rng, m, m, 2.0);
        let mm = &rr * rr.transpose() + skew(&mut rng, m, 2.0);
        let q = rand_vector(&mut rng, m, 2.0);
        random.record(&mm, &q)?;
    }
    // rank-deficient symmetric M with q built from a complementary pair:
    // solution sets are polytopes of positive dimension
    let mut degenerate = LcpTally::default();
    for _ in 0..300 {
        let m = rng.gen_range(2..=6);
        let r = rng.gen_range(1..m);
        let rr = rand_matrix(&mut rng, m, r, 2.0);
        let mm = &rr * rr.transpose();
        let support: Vec<bool> = (0..m).map(|i| i <= r || rng.gen_bool(0.5)).collect();
        let z0 = Vector::from_fn(m, |i, _| if support[i] { rng.gen_range(0.0..=2.0) } else { 0.0 });
        let w0 = Vector::from_fn(m, |i, _| if support[i] { 0.0 } else { rng.gen_range(0.0..=2.0) });
        degenerate.record(&mm, &(w0 - &mm * z0))?;
    }
    // pure skew part: many instances are infeasible
    let mut skew_only = LcpTally::default();
    for _ in 0..300 {
        let m = rng.gen_range(1..=6);
        let mm = skew(&mut rng, m, 2.0);
        skew_only.record(&mm, &rand_vector(&mut rng, m, 2.0))?;
    }

    // per-step problems of passive systems: B s is unique
    let (mut lcs_multi, mut worst_bs) = (0, 0.0_f64);
    for _ in 0..1000 {
        let (a, b, c, d) = degenerate_passive_system(&mut rng);
        let (n, m) = (a.nrows(), d.nrows());
        let xi = rand_vector(&mut rng, n, 2.0);
        // v(0) chosen so that a complementary pair (s₀, w₀) with support
        // larger than n solves the step problem
        let unforced = LcsSystem::new(a.clone(), b.clone(), c.clone(), d.clone(), Signal::zero(m)).map_err(|e| e.to_string())?;
        let base = LcsStepProblem::new(&unforced, 0.0, 0.1, &xi).map_err(|e| e.to_string())?;
        let support: Vec<bool> = (0..m).map(|i| i <= n || rng.gen_bool(0.5)).collect();
        let s0 = Vector::from_fn(m, |i, _| if support[i] { rng.gen_range(0.0..=2.0) } else { 0.0 });
        let w0 = Vector::from_fn(m, |i, _| if support[i] { 0.0 } else { rng.gen_range(0.0..=2.0) });
        let v = w0 - base.problem.m() * s0 - base.problem.q();
        let sys = LcsSystem::new(a, b.clone(), c, d, Signal::constant(v)).map_err(|e| e.to_string())?;
        let step = LcsStepProblem::new(&sys, 0.0, 0.1, &xi).map_err(|e| e.to_string())?;
        let all = enumerate_lcp(&step.problem).map_err(|e| e.to_string())?;
        if all.solutions.len() < 2 {
            continue;
        }
        lcs_multi += 1;
        let base = &b * &all.solutions[0].z;
        for s in &all.solutions[1..] {
            worst_bs = worst_bs.max((&b * &s.z - &base).norm());
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    check(
        random.ok() && degenerate.ok() && skew_only.ok() && worst_bs <= 1e-8 && lcs_multi > 0 && elapsed < 30.0,
        format!(
            "{}; {}; {}; |Bs1-Bs2| {worst_bs:.1e} on {lcs_multi} multi-solution LCS steps; {elapsed:.2}s",
            random.summary("random"),
            degenerate.summary("degenerate"),
            skew_only.summary("skew")
        ),
    )
}

// ---------------------------------------------------------------- 4, 5

struct Family {
    name: &'static str,
    op: OperatorSpec,
    horizon: f64,
}

fn families() -> Result<Vec<Family>, Error> {
    let from = |name: &'static str| -> Result<Family, Error> {
        let s = scenario::load(name)?;
        Ok(Family {
            name,
            op: s.operator()?,
            horizon: s.horizon,
        })
    };
    let triangle = Polyhedron::new(
        matrix(&[&[-1.0, 0.0], &[0.0, -1.0], &[1.0, 1.0]]),
        vector(&[0.0, 0.0, 1.0]),
    )?;
    Ok(vec![
        from("sweeping_interval")?,
        Family {
            name: "moving_ball",
            op: OperatorSpec::normal_cone(MovingSet::new(
                ConvexSet::ball(vector(&[0.0, 0.0]), 1.0)?,
                Some(Signal::piecewise_linear(vec![(0.0, vector(&[0.0, 0.0])), (1.0, vector(&[1.0, -0.5]))])?),
                None,
                None,
            )?),
            horizon: 1.0,
        },
        Family {
            name: "moving_triangle",
            op: OperatorSpec::normal_cone(MovingSet::new(
                ConvexSet::polyhedron(triangle),
                Some(Signal::piecewise_linear(vec![(0.0, vector(&[0.0, 0.0])), (1.0, vector(&[0.5, 0.5]))])?),
                None,
                None,
            )?),
            horizon: 1.0,
        },
        Family {
            name: "scalar_graphs",
            op: OperatorSpec::scalar_diag(vec![
                ScalarGraph::AbsSubdifferential,
                ScalarGraph::Relay { lower: -1.0, upper: 0.5 },
                ScalarGraph::SaturationInverse { limit: 1.0 },
                ScalarGraph::IndicatorInterval { lower: -0.5, upper: 1.0 },
                ScalarGraph::LinearSlope { slope: 2.0 },
            ])?,
            horizon: 1.0,
        },
        from("example1_paper_v")?,
        from("diode_bridge")?,
    ])
}

fn criterion_4() -> Outcome {
    let fams = families().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut samples, mut violations, mut worst) = (0, 0, f64::NEG_INFINITY);
    for i in 0..10_000 {
        let fam = &fams[i % fams.len()];
        let n = fam.op.dim();
        let t = rng.gen_range(0.0..=fam.horizon);
        let lambda = 10f64.powf(rng.gen_range(-3.0..=0.0));
        let x1 = rand_vector(&mut rng, n, 3.0);
        let x2 = rand_vector(&mut rng, n, 3.0);
        let j1 = fam.op.resolvent(t, lambda, &x1).map_err(|e| format!("{}: {e}", fam.name))?;
        let j2 = fam.op.resolvent(t, lambda, &x2).map_err(|e| format!("{}: {e}", fam.name))?;
        let excess = (&j1 - &j2).norm() - (&x1 - &x2).norm();
        worst = worst.max(excess);
        if excess > 1e-9 {
            violations += 1;
        }
        samples += 1;
    }
    check(
        violations == 0,
        format!("{samples} samples over {} families, {violations} violations, max |J x1 - J x2| - |x1 - x2| = {worst:.1e}", fams.len()),
    )
}

fn criterion_5() -> Outcome {
    let fams = families().map_err(|e| e.to_string())?;
    let lambdas = [1.0, 0.1, 0.01, 0.001];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures: Vec<String> = Vec::new();
    let (mut worst_residual, mut worst_bound) = (0.0_f64, f64::NEG_INFINITY);
    for fam in &fams {
        let n = fam.op.dim();
        let mut bad = [0usize; 4];
        for k in 0..1000 {
            let t = rng.gen_range(0.0..=fam.horizon);
            let raw = rand_vector(&mut rng, n, 3.0);
            // every other point is moved into the domain so F⁰ exists
            let x = if k % 2 == 0 {
                fam.op.domain_project(t, &raw).map_err(|e| e.to_string())?
            } else {
                raw
            };
            let min_sec = if k % 2 == 0 {
                Some(fam.op.minimal_section(t, &x).map_err(|e| format!("{}: {e}", fam.name))?.norm())
            } else {
                None
            };
            let mut prev: Option<(f64, f64)> = None;
            for &lambda in &lambdas {
                let j = fam.op.resolvent(t, lambda, &x).map_err(|e| e.to_string())?;
                let y = (&x - &j) / lambda;
                let dist = (&j - &x).norm();
                let size = y.norm();
                let res = fam.op.graph_residual(t, &j, &y).map_err(|e| e.to_string())?;
                worst_residual = worst_residual.max(res);
                if res > 1e-9 {
                    bad[1] += 1;
                }
                if let Some((pd, ps)) = prev {
                    if dist > pd + 1e-9 {
                        bad[0] += 1;
                    }
                    if size < ps - 1e-9 {
                        bad[2] += 1;
                    }
                }
                if let Some(f0) = min_sec {
                    worst_bound = worst_bound.max(size - f0);
                    if size > f0 + 1e-9 {
                        bad[3] += 1;
                    }
                }
                prev = Some((dist, size));
            }
        }
        if bad.iter().any(|&b| b > 0) {
            failures.push(format!("{} {bad:?}", fam.name));
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{} families x 1000 points x 4 lambdas: max graph residual {worst_residual:.1e}, max |F_l x| - |F0 x| = {worst_bound:.1e}{}",
            fams.len(),
            if failures.is_empty() { String::new() } else { format!("; failures [monotone J, residual, monotone F, bound]: {}", failures.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for name in ["sweeping_interval", "gradient_flow", "example1_ramp", "example1_paper_v", "diode_bridge", "relay_feedback"] {
        let s = scenario::load(name).map_err(|e| e.to_string())?;
        let op = s.operator().map_err(|e| e.to_string())?;
        let r = contraction_probe(&op, s.horizon, 100, 6, &SolverConfig::uniform(0.05)).map_err(|e| format!("{name}: {e}"))?;
        ok &= r.holds();
        match r.ratio_bound {
            Some(b) => lines.push(format!("{name} ratio {:.4} <= {b:.4}", r.max_ratio)),
            None => lines.push(format!("{name} growth {:.1e}", r.max_growth)),
        }
        if !r.holds() {
            lines.push(format!("{name}: {} violations", r.violations));
        }
    }
    check(ok, format!("100 pairs each: {}", lines.join(", ")))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let (code, out) = mevo(&["certify", "sweeping_interval", "--h", "1e-2"]);
    let violations = value_of(&out, "violations").unwrap_or_default();
    let s = scenario::load("sweeping_interval").map_err(|e| e.to_string())?;
    let traj = solve(&s.operator().map_err(|e| e.to_string())?, &s.x0_vector(), s.horizon, &SolverConfig::uniform(1e-2))
        .map_err(|e| e.to_string())?;
    let lib = certify_run(&traj, &s.bound_certificate().map_err(|e| e.to_string())?);

    let phi = Signal::scalar(&[(0.0, 0.0), (1.0, 1.0)]).map_err(|e| e.to_string())?;
    let cert = bound_certificate(1.0, phi, 1.0, 1.0).map_err(|e| e.to_string())?;
    let psi_exact = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0].iter().all(|&t| (cert.psi(t) - 11.0 * t).abs() <= 1e-12);
    let values = cert.alpha == 2.0 && cert.beta == 6.0 && cert.gamma == 7.0;
    check(
        code == 0 && violations == "0" && lib.holds() && psi_exact && values,
        format!(
            "certify exit {code}, violations {violations}, max |x_k| {:.3} <= beta {}; alpha/beta/gamma = {}/{}/{}, psi(t) = 11t: {psi_exact}",
            lib.max_norm, lib.beta, cert.alpha, cert.beta, cert.gamma
        ),
    )
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Outcome {
    let s = scenario::builtin("example1_ramp").expect("built-in");
    let sys = s.lcs_system().expect("lcs").map_err(|e| e.to_string())?;
    let kyp = kyp_check_identity(sys.a(), sys.b(), sys.c(), sys.d()).map_err(|e| e.to_string())?;

    let one = matrix(&[&[1.0]]);
    let refused_kyp = kyp_check_identity(&one, &one, &one, &matrix(&[&[0.0]])).map_err(|e| e.to_string())?;
    let unstable = LcsSystem::new(one.clone(), one.clone(), one.clone(), matrix(&[&[0.0]]), Signal::zero(1)).map_err(|e| e.to_string())?;
    let gate_refuses = matches!(build_lcs_operator(unstable, &[0.0, 0.5, 1.0]), Err(Error::Hypothesis(_)));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut passive, mut kernel, mut worst_margin, mut worst_kernel) = (0, 0, f64::NEG_INFINITY, 0.0_f64);
    for _ in 0..100 {
        let (a, b, c, d) = random_passive_system(&mut rng);
        let k = kyp_check_identity(&a, &b, &c, &d).map_err(|e| e.to_string())?;
        worst_margin = worst_margin.max(k.margin);
        passive += k.passive as usize;
        let kc = kernel_condition(&b, &c, &d);
        worst_kernel = worst_kernel.max(kc.worst);
        kernel += kc.holds as usize;
    }
    check(
        kyp.margin <= 1e-12 && kyp.passive && !refused_kyp.passive && gate_refuses && passive == 100 && kernel == 100,
        format!(
            "example margin {:.1e}; A=B=C=1,D=0 margin {:.1e}, gate refuses: {gate_refuses}; random systems passive {passive}/100 (worst margin {worst_margin:.1e}), kernel condition {kernel}/100 (worst {worst_kernel:.1e})",
            kyp.margin, refused_kyp.margin
        ),
    )
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let s = scenario::load("example1_paper_v").map_err(|e| e.to_string())?;
    let op = s.operator().map_err(|e| e.to_string())?;
    let (t1, t2) = (0.5, 1.5);
    let mut lines = Vec::new();
    let mut ok = true;
    for rho in [0.0, 1.0, 10.0] {
        let target = (rho + 1.0) / 2.0;
        let pt = |x: f64, y: f64| (vector(&[x]), vector(&[y]));
        let literal = dis_lower_bound(
            &GraphSample::unverified(vec![pt(rho + 1.0, 0.0)]).map_err(|e| e.to_string())?,
            &GraphSample::unverified(vec![pt(0.0, 1.0)]).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        // graph points checked against F(t₁, ·) and F(t₂, ·)
        let verified = dis_lower_bound(
            &GraphSample::new(&op, t1, vec![pt(0.0, 0.0)]).map_err(|e| e.to_string())?,
            &GraphSample::new(&op, t2, vec![pt(rho + 1.0, -1.0)]).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        ok &= literal == target && verified == target;
        lines.push(format!("rho={rho}: {literal} / {verified} (target {target})"));
    }
    check(ok, format!("stated points / verified points: {}", lines.join(", ")))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n}: PASS  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL  {detail}");
            }
        }
    }
    println!("acceptance: {}/9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
