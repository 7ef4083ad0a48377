//! Independent references: closed-form solutions, fine-step runs and
//! seeded randomized probes of monotonicity, contraction and the standing
//! assumptions on `F`.
//!
//! Probes can only falsify; a clean report is evidence, not proof.

use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::MovingSet;
use crate::linalg::{matrix, Vector};
use crate::operators::{OperatorFamily, OperatorSpec, ScalarGraph};
use crate::scenario::Scenario;
use crate::signal::Signal;
use crate::timestepper::{interpolate, solve, Partition, SolverConfig, Trajectory};
use crate::{Error, Result};

/// Exact solutions for the operator families that admit one.
#[derive(Debug, Clone)]
pub enum ClosedForm {
    /// One-dimensional sweeping by a moving interval (play operator):
    /// exact by clamping at every knot of the motion.
    Play1d { set: MovingSet, x0: f64 },
    /// `ẋ = −c x` componentwise.
    Exponential { rates: Vec<f64>, x0: Vector },
    /// The skew complementarity example with `v = (v₁, 0)`, `x₀ > 0`:
    /// `x(t) = x₀ + ∫₀ᵗ max(0, −v₁)`.
    SkewExample { x0: f64, v1: Signal },
}

impl ClosedForm {
    /// Recognizes operators with a known solution (no `f`, no `u`).
    pub fn detect(op: &OperatorSpec, x0: &Vector) -> Option<Self> {
        if !op.is_monotone_only() {
            return None;
        }
        match op.family() {
            OperatorFamily::NormalConeMoving(set) if set.dim() == 1 => Some(ClosedForm::Play1d {
                set: set.clone(),
                x0: x0[0],
            }),
            OperatorFamily::ScalarGraphDiag(gs) => {
                let rates: Option<Vec<f64>> = gs
                    .iter()
                    .map(|g| match g {
                        ScalarGraph::LinearSlope { slope } => Some(*slope),
                        _ => None,
                    })
                    .collect();
                rates.map(|rates| ClosedForm::Exponential { rates, x0: x0.clone() })
            }
            OperatorFamily::LcsRelation(lcs) => {
                let sys = lcs.system();
                let skew = sys.n() == 1
                    && sys.m() == 2
                    && sys.a()[(0, 0)] == 0.0
                    && *sys.b() == matrix(&[&[0.0, 1.0]])
                    && *sys.c() == matrix(&[&[0.0], &[1.0]])
                    && *sys.d() == matrix(&[&[0.0, 1.0], &[-1.0, 0.0]]);
                let v2_zero = sys.v().knots().iter().all(|(_, v)| v[1] == 0.0);
                if skew && v2_zero && x0[0] > 0.0 {
                    let v1 = Signal::scalar(&sys.v().knots().iter().map(|(t, v)| (*t, v[0])).collect::<Vec<_>>()).ok()?;
                    Some(ClosedForm::SkewExample { x0: x0[0], v1 })
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn eval(&self, t: f64) -> Result<Vector> {
        match self {
            ClosedForm::Play1d { set, x0 } => {
                let mut pts = vec![0.0];
                pts.extend(set.knot_times().into_iter().filter(|&k| k > 0.0 && k < t));
                pts.push(t);
                let mut x = Vector::from_element(1, *x0);
                for p in pts {
                    x = set.at(p)?.project(&x)?;
                }
                Ok(x)
            }
            ClosedForm::Exponential { rates, x0 } => {
                Ok(Vector::from_iterator(x0.len(), x0.iter().zip(rates).map(|(x, c)| x * (-c * t).exp())))
            }
            ClosedForm::SkewExample { x0, v1 } => Ok(Vector::from_element(1, x0 + negative_part_integral(v1, t))),
        }
    }
}

/// `∫₀ᵗ max(0, −v(τ)) dτ` for a scalar piecewise-linear `v`, exactly.
fn negative_part_integral(v: &Signal, t: f64) -> f64 {
    let mut pts = vec![0.0];
    pts.extend(v.knot_times().iter().copied().filter(|&k| k > 0.0 && k < t));
    pts.push(t);
    let mut acc = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ya, yb) = (-v.eval_scalar(a), -v.eval_scalar(b));
        acc += if ya >= 0.0 && yb >= 0.0 {
            0.5 * (ya + yb) * (b - a)
        } else if ya <= 0.0 && yb <= 0.0 {
            0.0
        } else {
            // one sign change: integrate the positive triangle
            let root = a + (b - a) * ya / (ya - yb);
            if ya > 0.0 {
                0.5 * ya * (root - a)
            } else {
                0.5 * yb * (b - root)
            }
        };
    }
    acc
}

/// A fine-step reference run, with the closed form when one exists.
#[derive(Debug, Clone)]
pub struct ReferenceRun {
    pub scenario: String,
    pub h_ref: f64,
    pub trajectory: Trajectory,
    pub closed_form: Option<ClosedForm>,
}

impl ReferenceRun {
    /// The reference value at `t`: the closed form if available,
    /// otherwise the interpolated fine-step trajectory.
    pub fn eval(&self, t: f64) -> Result<Vector> {
        match &self.closed_form {
            Some(c) => c.eval(t),
            None => interpolate(&self.trajectory, None, t),
        }
    }

    /// `max_k |x_k − x(t_k)|` of the fine run against the closed form.
    pub fn closed_form_gap(&self) -> Result<Option<f64>> {
        let Some(c) = &self.closed_form else {
            return Ok(None);
        };
        let mut worst = 0.0_f64;
        for (t, x) in self.trajectory.times().iter().zip(self.trajectory.states()) {
            worst = worst.max((x - c.eval(*t)?).norm());
        }
        Ok(Some(worst))
    }

    /// The fine run and the closed form agree within `10·h_ref`.
    pub fn self_consistent(&self) -> Result<bool> {
        Ok(self.closed_form_gap()?.is_none_or(|g| g <= 10.0 * self.h_ref))
    }
}

pub fn reference_solution(scenario: &Scenario, h_ref: f64) -> Result<ReferenceRun> {
    let op = scenario.operator()?;
    let x0 = scenario.x0_vector();
    let trajectory = solve(&op, &x0, scenario.horizon, &SolverConfig::uniform(h_ref))?;
    Ok(ReferenceRun {
        scenario: scenario.name.clone(),
        h_ref,
        closed_form: ClosedForm::detect(&op, &x0),
        trajectory,
    })
}

/// Sup error of a trajectory against a reference over the trajectory's grid.
pub fn grid_error(traj: &Trajectory, reference: &ReferenceRun) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (t, x) in traj.times().iter().zip(traj.states()) {
        worst = worst.max((x - reference.eval(*t)?).norm());
    }
    Ok(worst)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vector {
    Vector::from_fn(n, |_, _| rng.gen_range(-radius..=radius))
}

/// Growth of `|x_k − y_k|` along pairs of runs on a common partition.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub seed: u64,
    pub pairs: usize,
    pub steps: usize,
    /// `max (d_k − d_{k−1})`.
    pub max_growth: f64,
    /// `max d_k / d_{k−1}` over steps with `d_{k−1} > 1e-12`.
    pub max_ratio: f64,
    /// `(1 − hL)⁻¹` when a Lipschitz term is present.
    pub ratio_bound: Option<f64>,
    pub violations: usize,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "pairs = {}", self.pairs)?;
        writeln!(f, "steps = {}", self.steps)?;
        writeln!(f, "max_growth = {:e}", self.max_growth)?;
        writeln!(f, "max_ratio = {:e}", self.max_ratio)?;
        match self.ratio_bound {
            Some(b) => writeln!(f, "ratio_bound = {b:e}")?,
            None => writeln!(f, "ratio_bound = none")?,
        }
        write!(f, "violations = {}", self.violations)
    }
}

pub const PROBE_TOL: f64 = 1e-9;
/// Half-width of the box from which random initial states are drawn.
pub const PROBE_RADIUS: f64 = 2.0;

/// Runs `pairs` random initial pairs (projected onto the initial domain)
/// and measures per-step distance growth.
pub fn contraction_probe(op: &OperatorSpec, horizon: f64, pairs: usize, seed: u64, cfg: &SolverConfig) -> Result<ContractionReport> {
    let n = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let a = op.domain_project(0.0, &random_point(&mut rng, n, PROBE_RADIUS))?;
        let b = op.domain_project(0.0, &random_point(&mut rng, n, PROBE_RADIUS))?;
        starts.push((a, b));
    }
    let partition = cfg.partition(horizon)?;
    let l = op.lipschitz_constant();
    let ratio_bound = op.lipschitz_f().map(|_| 1.0 / (1.0 - partition.granularity() * l));
    if let Some(b) = ratio_bound {
        if !(b > 0.0) {
            return Err(Error::InvalidArgument("contraction probe needs h·L < 1".into()));
        }
    }
    let runs: Vec<Result<(f64, f64, usize)>> = starts
        .par_iter()
        .map(|(a, b)| {
            let ta = solve(op, a, horizon, cfg)?;
            let tb = solve(op, b, horizon, cfg)?;
            let mut growth = f64::NEG_INFINITY;
            let mut ratio = 0.0_f64;
            let mut violations = 0;
            let mut prev = (ta.state(0) - tb.state(0)).norm();
            for k in 1..ta.states().len() {
                let d = (ta.state(k) - tb.state(k)).norm();
                growth = growth.max(d - prev);
                if prev > 1e-12 {
                    ratio = ratio.max(d / prev);
                }
                let bad = match ratio_bound {
                    None => d > prev + PROBE_TOL,
                    Some(bound) => d > bound * prev + PROBE_TOL,
                };
                if bad {
                    violations += 1;
                }
                prev = d;
            }
            Ok((growth, ratio, violations))
        })
        .collect();
    let mut report = ContractionReport {
        seed,
        pairs,
        steps: partition.steps(),
        max_growth: f64::NEG_INFINITY,
        max_ratio: 0.0,
        ratio_bound,
        violations: 0,
    };
    for r in runs {
        let (g, q, v) = r?;
        report.max_growth = report.max_growth.max(g);
        report.max_ratio = report.max_ratio.max(q);
        report.violations += v;
    }
    if pairs == 0 {
        report.max_growth = 0.0;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assumption {
    A1,
    A2,
    A3,
    A4,
}

impl std::str::FromStr for Assumption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(Assumption::A1),
            "a2" => Ok(Assumption::A2),
            "a3" => Ok(Assumption::A3),
            "a4" => Ok(Assumption::A4),
            other => Err(Error::InvalidArgument(format!("unknown assumption `{other}` (a1..a4)"))),
        }
    }
}

/// Hypotheses declared by the user, against which (A2)/(A3) are tested.
#[derive(Debug, Clone, Default)]
pub struct Declared {
    pub phi: Option<Signal>,
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityProbe {
    pub pairs: usize,
    /// `min ⟨x₁ − x₂, y₁ − y₂⟩` over sampled graph pairs.
    pub min_inner: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainMotionProbe {
    pub intervals: usize,
    /// `max dist(z, dom F(t, ·))` over sampled `z ∈ dom F(s, ·)`, `s < t` adjacent.
    pub max_increment: f64,
    /// `max (increment − (φ(t) − φ(s)))`, when `φ` is declared.
    pub max_excess: Option<f64>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProbe {
    pub points: usize,
    /// `max |F⁰(t, x)| / (1 + |x|)`.
    pub max_ratio: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosednessProbe {
    pub sequences: usize,
    /// Graph residual of the limit pair at `t*`.
    pub max_residual: f64,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionReport {
    pub seed: u64,
    pub samples: usize,
    pub a1: MonotonicityProbe,
    pub a2: DomainMotionProbe,
    pub a3: Option<GrowthProbe>,
    pub a4: ClosednessProbe,
    /// Whether `φ` / `σ` were declared (otherwise (A2)/(A3) only report).
    pub phi_declared: bool,
    pub sigma: Option<f64>,
}

/// Residual accepted for the (A4) limit pair.
pub const CLOSEDNESS_TOL: f64 = 1e-6;

impl AssumptionReport {
    pub fn holds(&self, which: Assumption) -> Option<bool> {
        match which {
            Assumption::A1 => Some(self.a1.violations == 0),
            Assumption::A2 => self.phi_declared.then_some(self.a2.violations == 0),
            Assumption::A3 => self.sigma.and(self.a3.as_ref()).map(|g| g.violations == 0),
            Assumption::A4 => Some(self.a4.violations == 0),
        }
    }

    /// Machine-readable `key = value` lines for one assumption.
    pub fn key_values(&self, which: Assumption) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "samples = {}", self.samples);
        let holds = self.holds(which).map_or("unknown".to_string(), |b| b.to_string());
        match which {
            Assumption::A1 => {
                let _ = writeln!(out, "a1.pairs = {}", self.a1.pairs);
                let _ = writeln!(out, "a1.min_inner = {:e}", self.a1.min_inner);
                let _ = writeln!(out, "a1.violations = {}", self.a1.violations);
                let _ = write!(out, "a1.holds = {holds}");
            }
            Assumption::A2 => {
                let _ = writeln!(out, "a2.intervals = {}", self.a2.intervals);
                let _ = writeln!(out, "a2.max_increment = {:e}", self.a2.max_increment);
                match self.a2.max_excess {
                    Some(e) => writeln!(out, "a2.max_excess = {e:e}"),
                    None => writeln!(out, "a2.max_excess = undeclared"),
                }
                .ok();
                let _ = writeln!(out, "a2.violations = {}", self.a2.violations);
                let _ = write!(out, "a2.holds = {holds}");
            }
            Assumption::A3 => {
                match &self.a3 {
                    Some(g) => {
                        let _ = writeln!(out, "a3.points = {}", g.points);
                        let _ = writeln!(out, "a3.max_ratio = {:e}", g.max_ratio);
                        let _ = writeln!(out, "a3.violations = {}", g.violations);
                    }
                    None => {
                        let _ = writeln!(out, "a3.points = 0");
                    }
                }
                match self.sigma {
                    Some(s) => writeln!(out, "a3.sigma = {s:e}"),
                    None => writeln!(out, "a3.sigma = undeclared"),
                }
                .ok();
                let _ = write!(out, "a3.holds = {holds}");
            }
            Assumption::A4 => {
                let _ = writeln!(out, "a4.sequences = {}", self.a4.sequences);
                let _ = writeln!(out, "a4.max_residual = {:e}", self.a4.max_residual);
                let _ = writeln!(out, "a4.violations = {}", self.a4.violations);
                let _ = write!(out, "a4.holds = {holds}");
            }
        }
        out
    }
}

impl fmt::Display for AssumptionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in [Assumption::A1, Assumption::A2, Assumption::A3, Assumption::A4].into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let kv = self.key_values(a);
            // skip the repeated seed/sample header after the first block
            let body: Vec<&str> = kv.lines().skip(if i == 0 { 0 } else { 2 }).collect();
            write!(f, "{}", body.join("\n"))?;
        }
        Ok(())
    }
}

/// Seeded sampling of (A1)–(A4) along `grid`.
pub fn assumption_probe(
    op: &OperatorSpec,
    grid: &Partition,
    samples: usize,
    seed: u64,
    declared: &Declared,
) -> Result<AssumptionReport> {
    let n = op.dim();
    let times = grid.times();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambdas = [1.0, 0.1, 0.01];

    // (A1): pairs (J_λ ξ, F_λ ξ) lie on the graph of F(t, ·)
    let mut a1 = MonotonicityProbe {
        pairs: 0,
        min_inner: f64::INFINITY,
        violations: 0,
    };
    for _ in 0..samples {
        let t = times[rng.gen_range(0..times.len())];
        let lambda = lambdas[rng.gen_range(0..lambdas.len())];
        let xi1 = random_point(&mut rng, n, PROBE_RADIUS);
        let xi2 = random_point(&mut rng, n, PROBE_RADIUS);
        let (x1, x2) = (op.resolvent(t, lambda, &xi1)?, op.resolvent(t, lambda, &xi2)?);
        let (y1, y2) = ((&xi1 - &x1) / lambda, (&xi2 - &x2) / lambda);
        let inner = (&x1 - &x2).dot(&(&y1 - &y2));
        a1.pairs += 1;
        a1.min_inner = a1.min_inner.min(inner);
        if inner < -PROBE_TOL {
            a1.violations += 1;
        }
    }

    // (A2): domain motion between adjacent grid times
    let phi = declared.phi.as_ref();
    let mut a2 = DomainMotionProbe {
        intervals: 0,
        max_increment: 0.0,
        max_excess: phi.map(|_| f64::NEG_INFINITY),
        violations: 0,
    };
    let per_interval = (samples / times.len().max(1)).max(2);
    for w in times.windows(2) {
        let (s, t) = (w[0], w[1]);
        let (from, to) = (op.domain(s)?, op.domain(t)?);
        let mut inc = 0.0_f64;
        for _ in 0..per_interval {
            let z = from.project(&random_point(&mut rng, n, PROBE_RADIUS))?;
            inc = inc.max(to.distance(&z)?);
        }
        a2.intervals += 1;
        a2.max_increment = a2.max_increment.max(inc);
        if let Some(phi) = phi {
            let excess = inc - (phi.eval_scalar(t) - phi.eval_scalar(s));
            a2.max_excess = a2.max_excess.map(|e| e.max(excess));
            if excess > PROBE_TOL {
                a2.violations += 1;
            }
        }
    }

    // (A3): minimal-section growth
    let mut a3 = GrowthProbe {
        points: 0,
        max_ratio: 0.0,
        violations: 0,
    };
    for _ in 0..samples {
        let t = times[rng.gen_range(0..times.len())];
        let x = op.domain_project(t, &random_point(&mut rng, n, PROBE_RADIUS))?;
        let f0 = match op.minimal_section(t, &x) {
            Ok(v) => v,
            Err(Error::OutOfDomain { .. }) => continue,
            Err(e) => return Err(e),
        };
        let ratio = f0.norm() / (1.0 + x.norm());
        a3.points += 1;
        a3.max_ratio = a3.max_ratio.max(ratio);
        if let Some(sigma) = declared.sigma {
            if f0.norm() > sigma * (1.0 + x.norm()) + PROBE_TOL {
                a3.violations += 1;
            }
        }
    }

    // (A4): graph pairs at t_ℓ → t* must land on graph F(t*, ·)
    let mut a4 = ClosednessProbe {
        sequences: 0,
        max_residual: 0.0,
        violations: 0,
    };
    let span = grid.horizon() - grid.start();
    let sequences = (samples / 10).max(4);
    for _ in 0..sequences {
        let t_star = times[rng.gen_range(0..times.len())];
        let xi = random_point(&mut rng, n, PROBE_RADIUS);
        let lambda = 0.1;
        let dir = if t_star + span * 1e-3 <= grid.horizon() { 1.0 } else { -1.0 };
        let mut last = None;
        for l in 0..30 {
            let t_l = t_star + dir * span * 1e-3 * 0.5f64.powi(l);
            let x = op.resolvent(t_l, lambda, &xi)?;
            let y = (&xi - &x) / lambda;
            last = Some((x, y));
        }
        let (x, y) = last.expect("sequence is nonempty");
        let r = op.graph_residual(t_star, &x, &y)?;
        a4.sequences += 1;
        a4.max_residual = a4.max_residual.max(r);
        if r > CLOSEDNESS_TOL {
            a4.violations += 1;
        }
    }

    Ok(AssumptionReport {
        seed,
        samples,
        a1,
        a2,
        a3: Some(a3),
        a4,
        phi_declared: phi.is_some(),
        sigma: declared.sigma,
    })
}
