//! Resolvent time stepping (catching-up) for `ẋ ∈ −F(t, x) + f(x) + u(t)`:
//!
//! ```text
//! x_{k+1} = (I + h_{k+1} F(t_{k+1}, ·))⁻¹(x_k + h_{k+1} f(·) + h_{k+1} u(t_k))
//! ```
//!
//! with `f` evaluated at `x_k` (semi-implicit) or iterated to a fixed point
//! (Picard). Bound certificates, interpolation and refinement studies live
//! here as well.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use crate::lcp::{self, LcpProblem, LcpStatus};
use crate::linalg::{self, Matrix, Vector};
use crate::operators::{OperatorFamily, OperatorSpec, DOMAIN_TOL};
use crate::passivity::LcsSystem;
use crate::signal::Signal;
use crate::{Error, Result};

/// A time grid `0 = t₀ < t₁ < … < t_K = T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    times: Vec<f64>,
}

impl Partition {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::InvalidArgument("a partition needs at least two times".into()));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument("partition times must be finite".into()));
        }
        if let Some(w) = times.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(format!(
                "partition times must increase strictly ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Partition { times })
    }

    /// Steps of exactly `h` from 0 with a shorter final step, `K = ⌈T/h⌉`.
    pub fn uniform(horizon: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidArgument(format!("step size must be positive, got {h}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
        }
        let ratio = horizon / h;
        let steps = if (ratio - ratio.round()).abs() <= 1e-9 * ratio.max(1.0) {
            ratio.round()
        } else {
            ratio.ceil()
        }
        .max(1.0);
        if steps > 1e8 {
            return Err(Error::TooLarge {
                size: steps as usize,
                limit: 100_000_000,
            });
        }
        let k = steps as usize;
        let mut times: Vec<f64> = (0..k).map(|i| i as f64 * h).collect();
        times.push(horizon);
        Partition::new(times)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Number of steps `K`.
    pub fn steps(&self) -> usize {
        self.times.len() - 1
    }

    /// `h_k = t_k − t_{k−1}` for `k = 1..=K`.
    pub fn step(&self, k: usize) -> f64 {
        self.times[k] - self.times[k - 1]
    }

    /// `|Δ| = max h_k`.
    pub fn granularity(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    pub fn start(&self) -> f64 {
        self.times[0]
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("nonempty")
    }

    /// Index `k` with `t ∈ [t_k, t_{k+1}]` (the last interval is closed).
    pub fn locate(&self, t: f64) -> Result<usize> {
        let (start, end) = (self.start(), self.horizon());
        if !(t >= start && t <= end) {
            return Err(Error::OutOfRange { t, start, end });
        }
        let k = self.times.partition_point(|&s| s <= t);
        Ok(k.saturating_sub(1).min(self.steps() - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    SemiImplicit,
    Picard,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semi_implicit" => Ok(Mode::SemiImplicit),
            "picard" => Ok(Mode::Picard),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode `{other}` (expected semi_implicit or picard)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    LinearT,
    PsiWeighted,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepSize {
    Uniform(f64),
    Explicit(Partition),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub step: StepSize,
    pub mode: Mode,
    pub picard_tol: f64,
    pub picard_max: usize,
    pub project_x0: bool,
    pub interpolation: Interpolation,
}

impl SolverConfig {
    pub fn uniform(h: f64) -> Self {
        SolverConfig {
            step: StepSize::Uniform(h),
            mode: Mode::SemiImplicit,
            picard_tol: 1e-10,
            picard_max: 100,
            project_x0: false,
            interpolation: Interpolation::LinearT,
        }
    }

    pub fn explicit(partition: Partition) -> Self {
        SolverConfig {
            step: StepSize::Explicit(partition),
            ..SolverConfig::uniform(1.0)
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_project_x0(mut self, project: bool) -> Self {
        self.project_x0 = project;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let StepSize::Uniform(h) = self.step {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::InvalidArgument(format!("step size must be positive, got {h}")));
            }
        }
        if !(self.picard_tol > 0.0) || self.picard_max == 0 {
            return Err(Error::InvalidArgument("Picard tolerance and iteration cap must be positive".into()));
        }
        Ok(())
    }

    pub fn partition(&self, horizon: f64) -> Result<Partition> {
        match &self.step {
            StepSize::Uniform(h) => Partition::uniform(horizon, *h),
            StepSize::Explicit(p) => {
                if p.start() != 0.0 || (p.horizon() - horizon).abs() > 1e-12 * horizon.abs().max(1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "explicit partition spans [{}, {}], expected [0, {horizon}]",
                        p.start(),
                        p.horizon()
                    )));
                }
                Ok(p.clone())
            }
        }
    }
}

/// Per-step solver details.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepDiagnostics {
    pub pivots: usize,
    pub picard_iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput {
    pub state: Vector,
    pub multipliers: Option<Vector>,
    pub diagnostics: StepDiagnostics,
}

/// One step of the scheme from `(t_k, x_k)` to `t_{k+1}`.
pub fn step(op: &OperatorSpec, x_k: &Vector, t_k: f64, t_next: f64, cfg: &SolverConfig) -> Result<StepOutput> {
    let h = t_next - t_k;
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step must move forward ({t_k} -> {t_next})")));
    }
    linalg::check_len("state", x_k, op.dim())?;
    let mut base = x_k.clone();
    if let Some(u) = op.input_u() {
        base += u.eval(t_k) * h;
    }
    let Some(f) = op.lipschitz_f() else {
        let out = op.resolvent_detailed(t_next, h, &base)?;
        return Ok(StepOutput {
            state: out.state,
            multipliers: out.multipliers,
            diagnostics: StepDiagnostics {
                pivots: out.pivots,
                picard_iterations: 0,
            },
        });
    };
    match cfg.mode {
        Mode::SemiImplicit => {
            let out = op.resolvent_detailed(t_next, h, &(&base + f.apply(x_k) * h))?;
            Ok(StepOutput {
                state: out.state,
                multipliers: out.multipliers,
                diagnostics: StepDiagnostics {
                    pivots: out.pivots,
                    picard_iterations: 0,
                },
            })
        }
        Mode::Picard => {
            let hl = h * f.lipschitz();
            if hl >= 0.5 {
                return Err(Error::InvalidArgument(format!(
                    "Picard mode needs h·L < 0.5 (h = {h}, L = {})",
                    f.lipschitz()
                )));
            }
            let mut x = x_k.clone();
            let mut pivots = 0;
            let mut residual = f64::INFINITY;
            for i in 1..=cfg.picard_max {
                let out = op.resolvent_detailed(t_next, h, &(&base + f.apply(&x) * h))?;
                pivots += out.pivots;
                residual = (&out.state - &x).norm();
                x = out.state;
                if residual <= cfg.picard_tol * (1.0 + x.norm()) {
                    return Ok(StepOutput {
                        state: x,
                        multipliers: out.multipliers,
                        diagnostics: StepDiagnostics {
                            pivots,
                            picard_iterations: i,
                        },
                    });
                }
            }
            Err(Error::NonConvergence {
                iterations: cfg.picard_max,
                residual,
                best: x.as_slice().to_vec(),
            })
        }
    }
}

/// The LCP behind one resolvent step of an LCS:
/// `q = C(I − hA)⁻¹ξ + v(t)`, `M_h = D + hC(I − hA)⁻¹B`.
#[derive(Debug, Clone, PartialEq)]
pub struct LcsStepProblem {
    pub problem: LcpProblem,
    pub h: f64,
    /// `(I − hA)⁻¹ ξ`
    pub free_state: Vector,
    /// `(I − hA)⁻¹ B`
    pub gain: Matrix,
}

impl LcsStepProblem {
    pub fn new(sys: &LcsSystem, t: f64, h: f64, xi: &Vector) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidArgument(format!("step size must be positive, got {h}")));
        }
        linalg::check_len("LCS state", xi, sys.n())?;
        let n = sys.n();
        let ih = Matrix::identity(n, n) - sys.a() * h;
        let lu = ih.clone().lu();
        let singular = || Error::InvalidArgument(format!("I - hA is singular for h = {h}"));
        if linalg::solve_square(&ih, &Vector::zeros(n)).is_none() {
            return Err(singular());
        }
        let free_state = lu.solve(xi).ok_or_else(singular)?;
        let gain = lu.solve(sys.b()).ok_or_else(singular)?;
        let q = sys.c() * &free_state + sys.v().eval(t);
        let m = sys.d() + sys.c() * &gain * h;
        Ok(LcsStepProblem {
            problem: LcpProblem::new(q, m)?,
            h,
            free_state,
            gain,
        })
    }

    /// `x⁺ = (I − hA)⁻¹(ξ + h B s)` for a multiplier `s`.
    pub fn state_for(&self, s: &Vector) -> Vector {
        &self.free_state + &self.gain * s * self.h
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcsStep {
    pub state: Vector,
    /// Least-norm multiplier (reported).
    pub multipliers: Vector,
    /// The Lemke solution used to form the state.
    pub lemke_multipliers: Vector,
    pub pivots: usize,
    /// The step LCP had a single solution.
    pub unique: bool,
}

/// Resolvent of the LCS operator: solves the step LCP and maps back.
pub fn lcs_resolvent(sys: &LcsSystem, t: f64, h: f64, xi: &Vector) -> Result<LcsStep> {
    let sp = LcsStepProblem::new(sys, t, h, xi)?;
    sp.problem.require_psd()?;
    let sol = lcp::solve_lcp_unchecked(&sp.problem, LcpStatus::Infeasible)?;
    if !sol.is_solved() {
        return Err(Error::Infeasible(format!(
            "step LCP at t = {t} has no solution (q outside the dual cone); the system hypotheses are violated"
        )));
    }
    let state = sp.state_for(&sol.z);
    let multipliers = lcp::least_norm_from(&sp.problem, &sol)?;
    Ok(LcsStep {
        state,
        multipliers,
        lemke_multipliers: sol.z,
        pivots: sol.pivots,
        unique: sol.unique,
    })
}

/// Largest step for which the LCS guard `h < 0.5/‖A‖` holds.
pub fn lcs_step_limit(sys: &LcsSystem) -> f64 {
    let norm = linalg::spectral_norm(sys.a());
    if norm == 0.0 {
        f64::INFINITY
    } else {
        0.5 / norm
    }
}

/// Human-readable warnings about the step size for this operator.
pub fn step_size_warnings(op: &OperatorSpec, h: f64, mode: Mode) -> Vec<String> {
    let mut out = Vec::new();
    if let OperatorFamily::LcsRelation(lcs) = op.family() {
        let limit = lcs_step_limit(lcs.system());
        if h >= limit {
            out.push(format!("step h = {h} violates the LCS guard h < 0.5/|A| = {limit}"));
        }
    }
    let l = op.lipschitz_constant();
    if mode == Mode::Picard && h * l >= 0.5 {
        out.push(format!("step h = {h} violates the Picard guard h*L < 0.5 (L = {l})"));
    }
    out
}

/// Iterates on a partition with their multipliers and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    partition: Partition,
    states: Vec<Vector>,
    multipliers: Option<Vec<Vector>>,
    diagnostics: Vec<StepDiagnostics>,
}

impl Trajectory {
    /// Assembles a trajectory from raw parts (e.g. for post-processing).
    pub fn from_parts(partition: Partition, states: Vec<Vector>, multipliers: Option<Vec<Vector>>) -> Result<Self> {
        if states.len() != partition.times().len() {
            return Err(Error::dim("trajectory states", partition.times().len(), states.len()));
        }
        if let Some(m) = &multipliers {
            if m.len() != partition.steps() {
                return Err(Error::dim("trajectory multipliers", partition.steps(), m.len()));
            }
        }
        let diagnostics = vec![StepDiagnostics::default(); partition.steps()];
        Ok(Trajectory {
            partition,
            states,
            multipliers,
            diagnostics,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn times(&self) -> &[f64] {
        self.partition.times()
    }

    pub fn states(&self) -> &[Vector] {
        &self.states
    }

    pub fn states_mut(&mut self) -> &mut [Vector] {
        &mut self.states
    }

    pub fn state(&self, k: usize) -> &Vector {
        &self.states[k]
    }

    pub fn final_state(&self) -> &Vector {
        self.states.last().expect("nonempty")
    }

    /// Multipliers of step `k = 1..=K`, stored at index `k − 1`.
    pub fn multipliers(&self) -> Option<&[Vector]> {
        self.multipliers.as_deref()
    }

    pub fn diagnostics(&self) -> &[StepDiagnostics] {
        &self.diagnostics
    }

    pub fn dim(&self) -> usize {
        self.states[0].len()
    }

    pub fn total_pivots(&self) -> usize {
        self.diagnostics.iter().map(|d| d.pivots).sum()
    }

    /// CSV with header `t,x_1,…,x_n[,z_1,…,z_m]`; the multiplier columns of
    /// the initial row are empty.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let m = self.multipliers.as_ref().and_then(|z| z.first()).map_or(0, |z| z.len());
        let mut out = String::from("t");
        for i in 1..=n {
            let _ = write!(out, ",x_{i}");
        }
        for i in 1..=m {
            let _ = write!(out, ",z_{i}");
        }
        out.push('\n');
        for (k, (t, x)) in self.times().iter().zip(&self.states).enumerate() {
            let _ = write!(out, "{t:e}");
            for v in x.iter() {
                let _ = write!(out, ",{v:e}");
            }
            if let Some(z) = &self.multipliers {
                if k == 0 {
                    out.push_str(&",".repeat(m));
                } else {
                    for v in z[k - 1].iter() {
                        let _ = write!(out, ",{v:e}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// Runs the scheme on `[0, T]`.
pub fn solve(op: &OperatorSpec, x0: &Vector, horizon: f64, cfg: &SolverConfig) -> Result<Trajectory> {
    cfg.validate()?;
    linalg::check_len("x0", x0, op.dim())?;
    let partition = cfg.partition(horizon)?;
    let t0 = partition.start();
    let distance = op.domain_distance(t0, x0)?;
    let x0 = if distance <= DOMAIN_TOL {
        x0.clone()
    } else if cfg.project_x0 {
        op.domain_project(t0, x0)?
    } else {
        return Err(Error::OutOfDomain { distance });
    };
    for w in step_size_warnings(op, partition.granularity(), cfg.mode) {
        log::warn!("{w}");
    }
    let k_max = partition.steps();
    let mut states = Vec::with_capacity(k_max + 1);
    let mut multipliers: Vec<Vector> = Vec::new();
    let mut diagnostics = Vec::with_capacity(k_max);
    states.push(x0);
    let times = partition.times();
    for k in 1..=k_max {
        let wrap = |e: Error| Error::Step {
            step: k,
            source: Box::new(e),
        };
        let out = step(op, &states[k - 1], times[k - 1], times[k], cfg).map_err(wrap)?;
        let distance = op.domain_distance(times[k], &out.state).map_err(wrap)?;
        if distance > DOMAIN_TOL {
            return Err(wrap(Error::OutOfDomain { distance }));
        }
        if let Some(z) = out.multipliers {
            multipliers.push(z);
        }
        diagnostics.push(out.diagnostics);
        states.push(out.state);
    }
    let multipliers = (multipliers.len() == k_max && k_max > 0).then_some(multipliers);
    Ok(Trajectory {
        partition,
        states,
        multipliers,
        diagnostics,
    })
}

/// Constants of the a-priori bounds for a declared domain-motion function
/// `φ` and a constant growth bound `σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCertificate {
    pub x0_norm: f64,
    pub phi: Signal,
    pub sigma: f64,
    pub horizon: f64,
    pub alpha: f64,
    pub r_alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub r_gamma: f64,
    /// `ψ(t) = t + 2φ(t) + (1 + γ)σt`, piecewise linear.
    pub psi: Signal,
}

impl BoundCertificate {
    pub fn new(x0_norm: f64, phi: Signal, sigma: f64, horizon: f64) -> Result<Self> {
        if phi.dim() != 1 {
            return Err(Error::dim("phi", 1, phi.dim()));
        }
        if !phi.is_nondecreasing() {
            return Err(Error::InvalidArgument("phi must be nondecreasing".into()));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("sigma must be nonnegative, got {sigma}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) || !(x0_norm >= 0.0 && x0_norm.is_finite()) {
            return Err(Error::InvalidArgument("horizon must be positive and |x0| finite".into()));
        }
        let dphi = phi.eval_scalar(horizon) - phi.eval_scalar(0.0);
        let alpha = x0_norm + dphi;
        let beta = alpha + dphi + (1.0 + alpha) * sigma * horizon;
        let gamma = beta + dphi;
        let slope = (1.0 + gamma) * sigma;
        let mut knots: Vec<f64> = vec![0.0, horizon];
        knots.extend(phi.knot_times().iter().copied().filter(|&t| t > 0.0 && t < horizon));
        knots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        knots.dedup();
        let psi = Signal::scalar(
            &knots
                .iter()
                .map(|&t| (t, t + 2.0 * phi.eval_scalar(t) + slope * t))
                .collect::<Vec<_>>(),
        )?;
        Ok(BoundCertificate {
            x0_norm,
            phi,
            sigma,
            horizon,
            alpha,
            r_alpha: alpha + 1.0,
            beta,
            gamma,
            r_gamma: gamma + 1.0,
            psi,
        })
    }

    pub fn psi(&self, t: f64) -> f64 {
        let end = self.horizon;
        if t <= end {
            self.psi.eval_scalar(t)
        } else {
            // continue affinely past the horizon
            let slope = 1.0 + (1.0 + self.gamma) * self.sigma;
            self.psi.eval_scalar(end) + slope * (t - end) + 2.0 * (self.phi.eval_scalar(t) - self.phi.eval_scalar(end))
        }
    }
}

/// `bound_certificate(|x0|, φ, σ, T)`.
pub fn bound_certificate(x0_norm: f64, phi: Signal, sigma: f64, horizon: f64) -> Result<BoundCertificate> {
    BoundCertificate::new(x0_norm, phi, sigma, horizon)
}

/// `x_Δ(t)`: ψ-weighted (with a certificate) or linear interpolation.
pub fn interpolate(traj: &Trajectory, cert: Option<&BoundCertificate>, t: f64) -> Result<Vector> {
    let p = traj.partition();
    let k = p.locate(t)?;
    let (tk, tn) = (p.times()[k], p.times()[k + 1]);
    if t == tk {
        return Ok(traj.state(k).clone());
    }
    if t == tn {
        return Ok(traj.state(k + 1).clone());
    }
    let (a, b, c) = match cert {
        Some(c) => (c.psi(tk), c.psi(t), c.psi(tn)),
        None => (tk, t, tn),
    };
    let w = (b - a) / (c - a);
    Ok(traj.state(k) * (1.0 - w) + traj.state(k + 1) * w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `|x_k| > β`
    Norm,
    /// `|x_k − x_{k−1}| > ψ(t_k) − ψ(t_{k−1})`
    Increment,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub beta: f64,
    pub steps_checked: usize,
    pub max_norm: f64,
    /// Largest `|x_k − x_{k−1}| / (ψ(t_k) − ψ(t_{k−1}))`.
    pub max_increment_ratio: f64,
    pub violations: Vec<Violation>,
}

impl CertificateReport {
    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "steps_checked = {}", self.steps_checked)?;
        writeln!(f, "beta = {}", self.beta)?;
        writeln!(f, "max_norm = {:e}", self.max_norm)?;
        writeln!(f, "max_increment_ratio = {:e}", self.max_increment_ratio)?;
        writeln!(f, "violations = {}", self.violations.len())?;
        match self.first_violation() {
            Some(v) => write!(
                f,
                "first_violation = {} ({:?}: {:e} > {:e})",
                v.index, v.kind, v.lhs, v.rhs
            ),
            None => write!(f, "first_violation = none"),
        }
    }
}

const CERT_TOL: f64 = 1e-9;

/// Checks `|x_k| ≤ β` and `|x_k − x_{k−1}| ≤ ψ(t_k) − ψ(t_{k−1})` for `k ≥ 1`.
pub fn certify_run(traj: &Trajectory, cert: &BoundCertificate) -> CertificateReport {
    let times = traj.times();
    let mut violations = Vec::new();
    let mut max_norm = 0.0_f64;
    let mut max_ratio = 0.0_f64;
    for k in 1..times.len() {
        let norm = traj.state(k).norm();
        max_norm = max_norm.max(norm);
        if norm > cert.beta + CERT_TOL {
            violations.push(Violation {
                index: k,
                kind: ViolationKind::Norm,
                lhs: norm,
                rhs: cert.beta,
            });
        }
        let inc = (traj.state(k) - traj.state(k - 1)).norm();
        let allowed = cert.psi(times[k]) - cert.psi(times[k - 1]);
        if allowed > 0.0 {
            max_ratio = max_ratio.max(inc / allowed);
        }
        if inc > allowed + CERT_TOL {
            violations.push(Violation {
                index: k,
                kind: ViolationKind::Increment,
                lhs: inc,
                rhs: allowed,
            });
        }
    }
    CertificateReport {
        beta: cert.beta,
        steps_checked: times.len() - 1,
        max_norm,
        max_increment_ratio: max_ratio,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub level: usize,
    pub h: f64,
    pub steps: usize,
    pub final_state: Vector,
    /// `e_ℓ`: sup distance to the next finer level (absent on the finest).
    pub error: Option<f64>,
    /// `log₂(e_{ℓ−1}/e_ℓ)` (absent on the first).
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub h0: f64,
    pub levels: Vec<LevelReport>,
    /// `e_ℓ` nonincreasing.
    pub cauchy_monotone: bool,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<f64> {
        self.levels.iter().filter_map(|l| l.error).collect()
    }

    pub fn orders(&self) -> Vec<f64> {
        self.levels.iter().filter_map(|l| l.order).collect()
    }
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>5}  {:>12}  {:>8}  {:>14}  {:>8}", "level", "h", "steps", "e_l", "order")?;
        for l in &self.levels {
            let e = l.error.map_or("-".to_string(), |e| format!("{e:.6e}"));
            let o = l.order.map_or("-".to_string(), |o| format!("{o:.4}"));
            writeln!(f, "{:>5}  {:>12.6e}  {:>8}  {:>14}  {:>8}", l.level, l.h, l.steps, e, o)?;
        }
        write!(f, "cauchy_monotone = {}", self.cauchy_monotone)
    }
}

/// Sup distance between two trajectories' linear interpolants, evaluated at
/// the union of both grids (the interpolants are linear in between).
pub fn interpolant_distance(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    let mut ts: Vec<f64> = a.times().iter().chain(b.times()).copied().collect();
    ts.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    ts.dedup();
    let end = a.partition().horizon().min(b.partition().horizon());
    let mut worst = 0.0_f64;
    for t in ts.into_iter().filter(|&t| t <= end) {
        worst = worst.max((interpolate(a, None, t)? - interpolate(b, None, t)?).norm());
    }
    Ok(worst)
}

/// Solves at `h0, h0/2, …` (levels in parallel) and reports successive
/// differences and empirical orders.
pub fn refine_study(
    op: &OperatorSpec,
    x0: &Vector,
    horizon: f64,
    h0: f64,
    levels: usize,
    cfg: &SolverConfig,
) -> Result<ConvergenceReport> {
    if levels < 2 {
        return Err(Error::InvalidArgument(format!("refinement needs at least 2 levels, got {levels}")));
    }
    let hs: Vec<f64> = (0..levels).map(|l| h0 / 2f64.powi(l as i32)).collect();
    let runs: Vec<Result<Trajectory>> = std::thread::scope(|scope| {
        let handles: Vec<_> = hs
            .iter()
            .map(|&h| {
                let cfg = SolverConfig {
                    step: StepSize::Uniform(h),
                    ..cfg.clone()
                };
                scope.spawn(move || solve(op, x0, horizon, &cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let runs: Vec<Trajectory> = runs.into_iter().collect::<Result<_>>()?;
    let mut errors = Vec::new();
    for w in runs.windows(2) {
        errors.push(interpolant_distance(&w[0], &w[1])?);
    }
    let mut reports = Vec::new();
    for (l, run) in runs.iter().enumerate() {
        let error = errors.get(l).copied();
        let order = if l >= 1 && l < errors.len() {
            Some((errors[l - 1] / errors[l]).log2())
        } else {
            None
        };
        reports.push(LevelReport {
            level: l,
            h: hs[l],
            steps: run.partition().steps(),
            final_state: run.final_state().clone(),
            error,
            order,
        });
    }
    let cauchy_monotone = errors.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
    Ok(ConvergenceReport {
        h0,
        levels: reports,
        cauchy_monotone,
    })
}
