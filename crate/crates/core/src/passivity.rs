//! Linear complementarity systems
//!
//! ```text
//! ẋ = A x + B s + u(t),   0 ≤ s ⟂ C x + D s + v(t) ≥ 0,
//! ```
//!
//! written as `ẋ ∈ −H(t, x) + u(t)` with `H(t, x) = −A x − B SOL(C x + v(t), D)`.
//! `H(t, ·)` is maximal monotone when the system is passive with storage
//! `½|x|²` and `C x + v(t)` can reach the interior of `Q_D⁺`; those
//! conditions are checked here before an operator is handed out.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Polyhedron;
use crate::lcp::{self, cone_generators, lp_feasible, LcpProblem, LcpStatus};
use crate::linalg::{self, Matrix, Vector};
use crate::operators::{OperatorSpec, DOMAIN_TOL};
use crate::signal::Signal;
use crate::timestepper::{lcs_resolvent, LcsStep};
use crate::{Error, Result};

/// Tolerance on the LMI margin and kernel checks.
pub const LMI_TOL: f64 = 1e-9;
pub const KERNEL_TOL: f64 = 1e-8;

/// The data `(A, B, C, D, v, u)` of a linear complementarity system.
#[derive(Debug, Clone, PartialEq)]
pub struct LcsSystem {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    d: Matrix,
    v: Signal,
    u: Option<Signal>,
}

impl LcsSystem {
    /// Checks dimensions only; the definiteness of `D` is part of the
    /// hypothesis report so that a refusal can explain itself.
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix, v: Signal) -> Result<Self> {
        let n = a.nrows();
        let m = d.nrows();
        if a.ncols() != n {
            return Err(Error::dim("A (square)", n, a.ncols()));
        }
        if d.ncols() != m {
            return Err(Error::dim("D (square)", m, d.ncols()));
        }
        if b.nrows() != n {
            return Err(Error::dim("B rows", n, b.nrows()));
        }
        if b.ncols() != m {
            return Err(Error::dim("B columns", m, b.ncols()));
        }
        if c.nrows() != m {
            return Err(Error::dim("C rows", m, c.nrows()));
        }
        if c.ncols() != n {
            return Err(Error::dim("C columns", n, c.ncols()));
        }
        if v.dim() != m {
            return Err(Error::dim("signal v", m, v.dim()));
        }
        if a.iter().chain(b.iter()).chain(c.iter()).chain(d.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("system matrices must be finite".into()));
        }
        Ok(LcsSystem {
            a,
            b,
            c,
            d,
            v,
            u: None,
        })
    }

    pub fn with_input(mut self, u: Signal) -> Result<Self> {
        if u.dim() != self.n() {
            return Err(Error::dim("input u", self.n(), u.dim()));
        }
        self.u = Some(u);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn m(&self) -> usize {
        self.d.nrows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn v(&self) -> &Signal {
        &self.v
    }

    pub fn u(&self) -> Option<&Signal> {
        self.u.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KypCheck {
    pub passive: bool,
    /// Largest eigenvalue of the dissipation block matrix.
    pub margin: f64,
}

/// Negative semi-definiteness of `[[Aᵀ + A, B − Cᵀ], [Bᵀ − C, −(D + Dᵀ)]]`,
/// i.e. passivity with storage `½|x|²`.
pub fn kyp_check_identity(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<KypCheck> {
    let n = a.nrows();
    let m = d.nrows();
    if a.ncols() != n || b.shape() != (n, m) || c.shape() != (m, n) || d.ncols() != m {
        return Err(Error::InvalidArgument(format!(
            "inconsistent shapes A {:?}, B {:?}, C {:?}, D {:?}",
            a.shape(),
            b.shape(),
            c.shape(),
            d.shape()
        )));
    }
    let mut block = Matrix::zeros(n + m, n + m);
    block.view_mut((0, 0), (n, n)).copy_from(&(a + a.transpose()));
    let off = b - c.transpose();
    block.view_mut((0, n), (n, m)).copy_from(&off);
    block.view_mut((n, 0), (m, n)).copy_from(&off.transpose());
    block.view_mut((n, n), (m, m)).copy_from(&(-(d + d.transpose())));
    let margin = if n + m == 0 { 0.0 } else { linalg::max_sym_eigenvalue(&block) };
    Ok(KypCheck {
        passive: margin <= LMI_TOL,
        margin,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCheck {
    pub holds: bool,
    /// `max |(B − Cᵀ) k|` over a unit basis of `ker(D + Dᵀ)`.
    pub worst: f64,
    pub witness: Option<Vector>,
}

/// `(B − Cᵀ) ker(D + Dᵀ) = {0}`.
pub fn kernel_condition(b: &Matrix, c: &Matrix, d: &Matrix) -> KernelCheck {
    let ker = linalg::null_space(&(d + d.transpose()), 1e-9);
    let off = b - c.transpose();
    let mut worst = 0.0_f64;
    let mut witness = None;
    for k in ker.column_iter() {
        let r = (&off * k).norm();
        if r > worst {
            worst = r;
            witness = Some(k.into_owned());
        }
    }
    let holds = worst <= KERNEL_TOL;
    KernelCheck {
        holds,
        worst,
        witness: if holds { None } else { witness },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelIntCheck {
    pub t: f64,
    pub holds: bool,
    /// Best uniform slack over the normalized facet constraints.
    pub slack: Option<f64>,
    /// A state `x` with `C x + v(t)` strictly inside `Q_D⁺`.
    pub point: Option<Vector>,
    pub note: Option<String>,
}

/// `im C ∩ int(Q_D⁺ − v(t)) ≠ ∅` (the dual cone is solid since `Q_D` is pointed).
pub fn check_rel_int(sys: &LcsSystem, t: f64) -> Result<RelIntCheck> {
    let generators = cone_generators(sys.d())?;
    Ok(rel_int_with(sys, &generators, t))
}

fn rel_int_with(sys: &LcsSystem, generators: &[Vector], t: f64) -> RelIntCheck {
    let v = sys.v().eval(t);
    let n = sys.n();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut constant_slack = f64::INFINITY;
    for g in generators {
        let ctg = sys.c().transpose() * g;
        if ctg.norm() <= 1e-12 {
            constant_slack = constant_slack.min(g.dot(&v));
        } else {
            rows.push(-ctg);
            rhs.push(g.dot(&v));
        }
    }
    if constant_slack <= lcp::simplex::STRICT_TOL {
        return RelIntCheck {
            t,
            holds: false,
            slack: Some(constant_slack),
            point: None,
            note: Some("a generator of Q_D is orthogonal to im C and v(t) is not strictly inside".into()),
        };
    }
    if rows.is_empty() {
        return RelIntCheck {
            t,
            holds: true,
            slack: Some(constant_slack),
            point: Some(Vector::zeros(n)),
            note: None,
        };
    }
    let normals = Matrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
    let rep = lp_feasible(&normals, &Vector::from_vec(rhs), true);
    let holds = rep.strictly_feasible == Some(true);
    RelIntCheck {
        t,
        holds,
        slack: rep.slack.map(|s| s.min(constant_slack)),
        point: rep.point,
        note: (!holds).then(|| "no state maps strictly inside Q_D+ - v(t)".into()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MotionIncrement {
    pub s: f64,
    pub t: f64,
    /// `max dist(w, W(t))` over sampled `w ∈ W(s)`.
    pub increment: f64,
    /// `|v(t) − v(s)|`.
    pub v_jump: f64,
    /// `∫ₛᵗ |v̇|`.
    pub v_variation: f64,
}

/// Sampled movement of `W(t) = im C ∩ (Q_D⁺ − v(t))` along a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainMotionReport {
    pub seed: u64,
    pub samples: usize,
    pub increments: Vec<MotionIncrement>,
    pub max_increment: f64,
    /// Largest observed `increment / |v(t) − v(s)|`.
    pub beta_estimate: f64,
    /// Intervals skipped because a sampled set was empty.
    pub skipped: usize,
}

/// Sampling radius for domain-motion probes.
const MOTION_RADIUS: f64 = 10.0;

/// Report-only estimate of how fast the complementarity domain moves.
pub fn check_domain_motion(sys: &LcsSystem, grid: &[f64], samples: usize, seed: u64) -> Result<DomainMotionReport> {
    let generators = cone_generators(sys.d())?;
    domain_motion_with(sys, &generators, grid, samples, seed)
}

fn motion_set(sys: &LcsSystem, generators: &[Vector], t: f64) -> Result<Polyhedron> {
    let m = sys.m();
    let v = sys.v().eval(t);
    let kept: Vec<&Vector> = generators.iter().collect();
    let normals = Matrix::from_fn(kept.len(), m, |i, j| -kept[i][j]);
    let offsets = Vector::from_iterator(kept.len(), kept.iter().map(|g| g.dot(&v)));
    // (im C)^⊥ = ker Cᵀ
    let perp = linalg::null_space(&sys.c().transpose(), 1e-10);
    let eq = perp.transpose();
    let eq_b = Vector::zeros(eq.nrows());
    Polyhedron::with_equalities(normals, offsets, eq, eq_b)
}

fn domain_motion_with(
    sys: &LcsSystem,
    generators: &[Vector],
    grid: &[f64],
    samples: usize,
    seed: u64,
) -> Result<DomainMotionReport> {
    let m = sys.m();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut increments = Vec::new();
    let mut skipped = 0;
    for w in grid.windows(2) {
        let (s, t) = (w[0], w[1]);
        let (from, to) = match (motion_set(sys, generators, s), motion_set(sys, generators, t)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                skipped += 1;
                continue;
            }
        };
        let mut probes = vec![Vector::zeros(m)];
        for _ in 0..samples {
            probes.push(Vector::from_fn(m, |_, _| rng.gen_range(-MOTION_RADIUS..=MOTION_RADIUS)));
        }
        let mut increment = 0.0_f64;
        for p in probes {
            let w = crate::geometry::ConvexSet::polyhedron(from.clone()).project(&p)?;
            let d = crate::geometry::ConvexSet::polyhedron(to.clone()).distance(&w)?;
            increment = increment.max(d);
        }
        let v_jump = (sys.v().eval(t) - sys.v().eval(s)).norm();
        increments.push(MotionIncrement {
            s,
            t,
            increment,
            v_jump,
            v_variation: sys.v().variation(s, t),
        });
    }
    let max_increment = increments.iter().map(|i| i.increment).fold(0.0, f64::max);
    let beta_estimate = increments
        .iter()
        .filter(|i| i.v_jump > 1e-14)
        .map(|i| i.increment / i.v_jump)
        .fold(0.0, f64::max);
    Ok(DomainMotionReport {
        seed,
        samples,
        increments,
        max_increment,
        beta_estimate,
        skipped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// Everything checked before an LCS operator is built.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub d_psd: PsdCheck,
    pub passive_identity: KypCheck,
    pub kernel_condition: KernelCheck,
    pub rel_int: Vec<RelIntCheck>,
    pub domain_motion: Option<DomainMotionReport>,
    /// Number of extreme rays of `Q_D`, when they could be computed.
    pub cone_generators: Option<usize>,
    pub overall: bool,
}

/// Default sample count for the motion diagnostic inside reports.
pub const REPORT_MOTION_SAMPLES: usize = 8;

pub fn hypothesis_report(sys: &LcsSystem, grid: &[f64]) -> HypothesisReport {
    let min_eigenvalue = if sys.m() == 0 { 0.0 } else { linalg::min_sym_eigenvalue(sys.d()) };
    let d_psd = PsdCheck {
        psd: min_eigenvalue >= -linalg::PSD_TOL,
        min_eigenvalue,
    };
    let passive_identity = kyp_check_identity(sys.a(), sys.b(), sys.c(), sys.d()).expect("shapes validated by LcsSystem");
    let kernel = kernel_condition(sys.b(), sys.c(), sys.d());
    let generators = cone_generators(sys.d());
    let (rel_int, domain_motion, count): (Vec<RelIntCheck>, _, _) = match &generators {
        Ok(g) => (
            grid.iter().map(|&t| rel_int_with(sys, g, t)).collect(),
            domain_motion_with(sys, g, grid, REPORT_MOTION_SAMPLES, 0).ok(),
            Some(g.len()),
        ),
        Err(e) => (
            grid.iter()
                .map(|&t| RelIntCheck {
                    t,
                    holds: false,
                    slack: None,
                    point: None,
                    note: Some(format!("Q_D generators unavailable: {e}")),
                })
                .collect(),
            None,
            None,
        ),
    };
    let overall = d_psd.psd
        && passive_identity.passive
        && kernel.holds
        && !grid.is_empty()
        && rel_int.iter().all(|r: &RelIntCheck| r.holds);
    HypothesisReport {
        d_psd,
        passive_identity,
        kernel_condition: kernel,
        rel_int,
        domain_motion,
        cone_generators: count,
        overall,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "D psd:              {} (min eigenvalue of sym part {:.3e})",
            yes_no(self.d_psd.psd),
            self.d_psd.min_eigenvalue
        )?;
        writeln!(
            f,
            "passive (K = I):    {} (LMI margin {:.3e})",
            yes_no(self.passive_identity.passive),
            self.passive_identity.margin
        )?;
        write!(
            f,
            "kernel condition:   {} (max |(B - C^T)k| = {:.3e})",
            yes_no(self.kernel_condition.holds),
            self.kernel_condition.worst
        )?;
        if let Some(w) = &self.kernel_condition.witness {
            write!(f, " witness k = {:?}", w.as_slice())?;
        }
        writeln!(f)?;
        match self.cone_generators {
            Some(k) => writeln!(f, "Q_D extreme rays:   {k}")?,
            None => writeln!(f, "Q_D extreme rays:   unavailable")?,
        }
        let ok = self.rel_int.iter().filter(|r| r.holds).count();
        writeln!(f, "relative interior:  {ok}/{} grid times", self.rel_int.len())?;
        if let Some(bad) = self.rel_int.iter().find(|r| !r.holds) {
            writeln!(
                f,
                "  first failure at t = {}: slack {:?}; {}",
                bad.t,
                bad.slack,
                bad.note.as_deref().unwrap_or("")
            )?;
        }
        if let Some(m) = &self.domain_motion {
            writeln!(
                f,
                "domain motion:      max increment {:.3e}, beta estimate {:.3e} ({} intervals, seed {})",
                m.max_increment,
                m.beta_estimate,
                m.increments.len(),
                m.seed
            )?;
        }
        write!(f, "overall:            {}", if self.overall { "PASS" } else { "FAIL" })
    }
}

/// The gated complementarity operator `H(t, ·)` with cached `Q_D` generators.
#[derive(Debug, Clone)]
pub struct LcsOperator {
    sys: LcsSystem,
    generators: Vec<Vector>,
}

impl LcsOperator {
    pub fn system(&self) -> &LcsSystem {
        &self.sys
    }

    /// Unit extreme rays of `Q_D`.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn resolvent(&self, t: f64, h: f64, xi: &Vector) -> Result<LcsStep> {
        lcs_resolvent(&self.sys, t, h, xi)
    }

    /// `dom H(t, ·) = {x : gᵀ(C x + v(t)) ≥ 0 for every generator g}`.
    pub fn domain(&self, t: f64) -> Result<Polyhedron> {
        let n = self.sys.n();
        let v = self.sys.v().eval(t);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for g in &self.generators {
            let ctg = self.sys.c().transpose() * g;
            let gv = g.dot(&v);
            if ctg.norm() <= 1e-12 {
                if gv < -DOMAIN_TOL {
                    return Err(Error::EmptySet(format!("operator domain at t = {t}")));
                }
                continue;
            }
            rows.push(-ctg);
            rhs.push(gv);
        }
        Ok(Polyhedron::from_parts_unchecked(
            Matrix::from_fn(rows.len(), n, |i, j| rows[i][j]),
            Vector::from_vec(rhs),
            Matrix::zeros(0, n),
            Vector::zeros(0),
        ))
    }

    /// Least-norm element of `{−A x − B s : s ∈ SOL(C x + v(t), D)}`.
    pub fn minimal_section(&self, t: f64, x: &Vector) -> Result<Vector> {
        let sys = &self.sys;
        let q = sys.c() * x + sys.v().eval(t);
        let p = LcpProblem::new(q, sys.d().clone())?;
        let sol = lcp::solve_lcp_unchecked(&p, LcpStatus::Infeasible)?;
        let ax = sys.a() * x;
        if !sol.is_solved() {
            let distance = crate::geometry::ConvexSet::polyhedron(self.domain(t)?).distance(x)?;
            return Err(Error::OutOfDomain { distance });
        }
        if sol.unique {
            return Ok(-(ax + sys.b() * &sol.z));
        }
        // min ½|A x + B s|² over the solution polyhedron
        let poly = lcp::solution_polyhedron(&p, &sol.z);
        let (g, h) = inequality_form(&poly);
        let bt = sys.b().transpose();
        let s = lcp::solve_qp_nonneg(&(&bt * sys.b()), &(&bt * &ax), &g, &h)?.unwrap_or_else(|| sol.z.clone());
        let candidate = -(&ax + sys.b() * &s);
        let fallback = -(&ax + sys.b() * &sol.z);
        Ok(if candidate.norm() <= fallback.norm() { candidate } else { fallback })
    }
}

/// Rewrites equalities as pairs of inequalities, slightly relaxed so that
/// rounding in the data cannot empty the set.
fn inequality_form(p: &Polyhedron) -> (Matrix, Vector) {
    let n = p.dim();
    let (a, b) = (p.normals(), p.offsets());
    let (e, f) = (p.eq_normals(), p.eq_offsets());
    let rows = a.nrows() + 2 * e.nrows();
    let mut g = Matrix::zeros(rows, n);
    let mut h = Vector::zeros(rows);
    g.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    h.rows_mut(0, a.nrows()).copy_from(b);
    for i in 0..e.nrows() {
        let slack = 1e-12 * (1.0 + f[i].abs() + e.row(i).norm());
        let r = a.nrows() + 2 * i;
        g.row_mut(r).copy_from(&e.row(i));
        h[r] = f[i] + slack;
        g.row_mut(r + 1).copy_from(&(-e.row(i)));
        h[r + 1] = -f[i] + slack;
    }
    (g, h)
}

/// Builds `H(t, ·)` after checking D psd, passivity with `K = I`, the
/// kernel condition and the interior condition at every grid time.
pub fn build_lcs_operator(sys: LcsSystem, grid: &[f64]) -> Result<OperatorSpec> {
    let report = hypothesis_report(&sys, grid);
    if !report.overall {
        return Err(Error::Hypothesis(Box::new(report)));
    }
    let generators = cone_generators(sys.d())?;
    let u = sys.u.clone();
    let spec = OperatorSpec::lcs(LcsOperator { sys, generators });
    match u {
        Some(u) => spec.with_input(u),
        None => Ok(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matrix, vector};

    pub(crate) fn example1(v: Signal) -> LcsSystem {
        LcsSystem::new(
            matrix(&[&[0.0]]),
            matrix(&[&[0.0, 1.0]]),
            matrix(&[&[0.0], &[1.0]]),
            matrix(&[&[0.0, 1.0], &[-1.0, 0.0]]),
            v,
        )
        .unwrap()
    }

    fn ramp() -> Signal {
        Signal::piecewise_linear(vec![(0.0, vector(&[0.0, 0.0])), (1.0, vector(&[-1.0, 0.0]))]).unwrap()
    }

    fn scalar(a: f64, b: f64, c: f64, d: f64, v: Signal) -> LcsSystem {
        LcsSystem::new(matrix(&[&[a]]), matrix(&[&[b]]), matrix(&[&[c]]), matrix(&[&[d]]), v).unwrap()
    }

    #[test]
    fn kyp_examples() {
        let s = example1(ramp());
        let k = kyp_check_identity(s.a(), s.b(), s.c(), s.d()).unwrap();
        assert!(k.passive);
        assert!(k.margin.abs() <= 1e-12);
        let one = matrix(&[&[1.0]]);
        let zero = matrix(&[&[0.0]]);
        let k = kyp_check_identity(&matrix(&[&[-1.0]]), &one, &one, &zero).unwrap();
        assert!(k.passive);
        let k = kyp_check_identity(&one, &one, &one, &zero).unwrap();
        assert!(!k.passive);
        assert!((k.margin - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rel_int_examples() {
        let s = example1(ramp());
        for t in [0.0, 0.5, 1.0] {
            assert!(check_rel_int(&s, t).unwrap().holds);
        }
        let s = scalar(0.0, 0.0, 0.0, 0.0, Signal::constant(vector(&[-1.0])));
        assert!(!check_rel_int(&s, 0.0).unwrap().holds);
        let s = scalar(0.0, 0.0, 0.0, 1.0, Signal::constant(vector(&[-1.0])));
        assert!(check_rel_int(&s, 0.0).unwrap().holds);
    }

    #[test]
    fn domain_motion_examples() {
        let grid = [0.0, 0.25, 0.5, 1.0];
        let s = example1(Signal::constant(vector(&[1.0, 0.0])));
        assert_eq!(check_domain_motion(&s, &grid, 10, 1).unwrap().max_increment, 0.0);
        let r = check_domain_motion(&example1(ramp()), &grid, 10, 1).unwrap();
        assert!(r.max_increment <= 1e-9, "{r:?}");
        let s = scalar(0.0, 1.0, 1.0, 0.0, Signal::scalar(&[(0.0, 0.0), (1.0, 1.0)]).unwrap());
        let r = check_domain_motion(&s, &grid, 10, 1).unwrap();
        assert!(r.max_increment <= 1e-9, "{r:?}");
    }

    #[test]
    fn gate_examples() {
        let grid = [0.0, 0.5, 1.0];
        assert!(build_lcs_operator(example1(ramp()), &grid).is_ok());
        let bad = scalar(1.0, 1.0, 1.0, 0.0, Signal::zero(1));
        match build_lcs_operator(bad, &grid) {
            Err(Error::Hypothesis(r)) => assert!(!r.passive_identity.passive),
            other => panic!("{other:?}"),
        }
        let mut s = example1(ramp());
        s.d = matrix(&[&[0.0, 1.0], &[-1.0, -1.0]]);
        match build_lcs_operator(s, &grid) {
            Err(Error::Hypothesis(r)) => {
                assert!(!r.d_psd.psd);
                assert!(!r.overall);
                assert!(r.to_string().contains("FAIL"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kernel_condition_fails_with_mismatched_ports() {
        // D = 0 so every direction is in the kernel; B ≠ Cᵀ breaks it
        let k = kernel_condition(&matrix(&[&[1.0]]), &matrix(&[&[2.0]]), &matrix(&[&[0.0]]));
        assert!(!k.holds);
        assert!(k.witness.is_some());
    }

    #[test]
    fn example1_minimal_section_and_domain() {
        let op = build_lcs_operator(example1(Signal::zero(2)), &[0.0, 1.0]).unwrap();
        assert!(op.minimal_section(0.0, &vector(&[1.0])).unwrap().norm() < 1e-12);
        assert_eq!(op.domain_project(0.0, &vector(&[-1.0])).unwrap()[0], 0.0);
        // v = (−1, 0) at x = 2: s = (2, 1) is the only solution, so F⁰ = −1
        let op = build_lcs_operator(example1(Signal::constant(vector(&[-1.0, 0.0]))), &[0.0]).unwrap();
        assert!((op.minimal_section(0.0, &vector(&[2.0])).unwrap()[0] + 1.0).abs() < 1e-12);
        assert!(matches!(
            op.minimal_section(0.0, &vector(&[-1.0])),
            Err(Error::OutOfDomain { .. })
        ));
    }
}
