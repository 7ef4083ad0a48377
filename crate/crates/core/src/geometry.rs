//! Closed convex sets with projections, distances and Hausdorff distance.
//!
//! Boxes and balls project in closed form. Polyhedra (finite intersections
//! of halfspaces, optionally with affine equalities) use cyclic Dykstra
//! iterations; every few sweeps the active set suggested by the iterate is
//! solved exactly and accepted once its KKT conditions check out.

use crate::lcp::simplex::lp_feasible_with_equalities;
use crate::linalg::{self, Matrix, Vector};
use crate::signal::Signal;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    /// Stop when a full Dykstra sweep moves the iterate less than this.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            tol: 1e-10,
            max_sweeps: 10_000,
        }
    }
}

/// `{x : aᵢᵀx ≤ bᵢ} ∩ {x : E x = f}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    normals: Matrix,
    offsets: Vector,
    eq_normals: Matrix,
    eq_offsets: Vector,
}

impl Polyhedron {
    /// Intersection of halfspaces `aᵢᵀx ≤ bᵢ`; rejects zero normals and
    /// empty intersections (checked by an LP feasibility solve).
    pub fn new(normals: Matrix, offsets: Vector) -> Result<Self> {
        let n = normals.ncols();
        Polyhedron::with_equalities(normals, offsets, Matrix::zeros(0, n), Vector::zeros(0))
    }

    pub fn with_equalities(
        normals: Matrix,
        offsets: Vector,
        eq_normals: Matrix,
        eq_offsets: Vector,
    ) -> Result<Self> {
        if normals.nrows() != offsets.len() {
            return Err(Error::dim("halfspace offsets", normals.nrows(), offsets.len()));
        }
        if eq_normals.nrows() != eq_offsets.len() {
            return Err(Error::dim("equality offsets", eq_normals.nrows(), eq_offsets.len()));
        }
        if eq_normals.ncols() != normals.ncols() {
            return Err(Error::dim("equality normals", normals.ncols(), eq_normals.ncols()));
        }
        if let Some(i) = (0..normals.nrows()).find(|&i| normals.row(i).norm() == 0.0) {
            return Err(Error::InvalidArgument(format!("halfspace normal {i} is zero")));
        }
        if normals
            .iter()
            .chain(offsets.iter())
            .chain(eq_normals.iter())
            .chain(eq_offsets.iter())
            .any(|v| !v.is_finite())
        {
            return Err(Error::InvalidArgument("polyhedron data must be finite".into()));
        }
        let rep = lp_feasible_with_equalities(&normals, &offsets, &eq_normals, &eq_offsets, false);
        if !rep.feasible {
            return Err(Error::EmptySet("halfspace intersection".into()));
        }
        Ok(Polyhedron {
            normals,
            offsets,
            eq_normals,
            eq_offsets,
        })
    }

    /// The whole space `ℝⁿ`.
    pub fn whole_space(n: usize) -> Self {
        Polyhedron::from_parts_unchecked(
            Matrix::zeros(0, n),
            Vector::zeros(0),
            Matrix::zeros(0, n),
            Vector::zeros(0),
        )
    }

    /// Skips validation; callers guarantee nonemptiness (e.g. a known point).
    pub(crate) fn from_parts_unchecked(
        normals: Matrix,
        offsets: Vector,
        eq_normals: Matrix,
        eq_offsets: Vector,
    ) -> Self {
        Polyhedron {
            normals,
            offsets,
            eq_normals,
            eq_offsets,
        }
    }

    pub fn dim(&self) -> usize {
        self.normals.ncols()
    }

    pub fn normals(&self) -> &Matrix {
        &self.normals
    }

    pub fn offsets(&self) -> &Vector {
        &self.offsets
    }

    pub fn eq_normals(&self) -> &Matrix {
        &self.eq_normals
    }

    pub fn eq_offsets(&self) -> &Vector {
        &self.eq_offsets
    }

    /// Largest constraint violation at `x` (0 inside).
    pub fn violation(&self, x: &Vector) -> f64 {
        let ineq = (&self.normals * x - &self.offsets)
            .iter()
            .fold(0.0_f64, |acc, &v| acc.max(v));
        let eq = (&self.eq_normals * x - &self.eq_offsets)
            .iter()
            .fold(0.0_f64, |acc, &v| acc.max(v.abs()));
        ineq.max(eq)
    }

    pub fn is_bounded(&self) -> bool {
        // bounded iff no nonzero d with A d ≤ 0, E d = 0
        let n = self.dim();
        (0..n).all(|j| {
            [1.0, -1.0].iter().all(|&sign| {
                let mut c = Vector::zeros(n);
                c[j] = sign;
                let zero = Vector::zeros(self.normals.nrows());
                let zero_eq = Vector::zeros(self.eq_normals.nrows());
                matches!(
                    crate::lcp::simplex::maximize(&c, &self.normals, &zero, &self.eq_normals, &zero_eq),
                    crate::lcp::LpOutcome::Optimal { value, .. } if value.abs() < 1e-12
                )
            })
        })
    }
}

/// Geometric description behind a [`ConvexSet`].
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// Componentwise bounds; infinite bounds allowed.
    Box { lower: Vector, upper: Vector },
    Ball { center: Vector, radius: f64 },
    Halfspaces(Polyhedron),
    Translate { base: Box<ConvexSet>, shift: Vector },
}

/// A nonempty closed convex subset of `ℝⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSet {
    shape: Shape,
}

impl ConvexSet {
    pub fn boxed(lower: Vector, upper: Vector) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::dim("box bounds", lower.len(), upper.len()));
        }
        if lower.iter().chain(upper.iter()).any(|v| v.is_nan()) {
            return Err(Error::InvalidArgument("box bounds must not be NaN".into()));
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::EmptySet(format!(
                "box axis {i}: lower {} > upper {}",
                lower[i], upper[i]
            )));
        }
        Ok(ConvexSet {
            shape: Shape::Box { lower, upper },
        })
    }

    /// Closed interval `[lower, upper]` in one dimension.
    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        ConvexSet::boxed(Vector::from_element(1, lower), Vector::from_element(1, upper))
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("ball radius {radius} must be finite and >= 0")));
        }
        Ok(ConvexSet {
            shape: Shape::Ball { center, radius },
        })
    }

    pub fn halfspaces(normals: Matrix, offsets: Vector) -> Result<Self> {
        Ok(ConvexSet {
            shape: Shape::Halfspaces(Polyhedron::new(normals, offsets)?),
        })
    }

    pub fn polyhedron(poly: Polyhedron) -> Self {
        ConvexSet {
            shape: Shape::Halfspaces(poly),
        }
    }

    pub fn whole_space(n: usize) -> Self {
        ConvexSet::polyhedron(Polyhedron::whole_space(n))
    }

    pub fn translate(base: ConvexSet, shift: Vector) -> Result<Self> {
        if base.dim() != shift.len() {
            return Err(Error::dim("translation", base.dim(), shift.len()));
        }
        Ok(ConvexSet {
            shape: Shape::Translate {
                base: Box::new(base),
                shift,
            },
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Box { lower, .. } => lower.len(),
            Shape::Ball { center, .. } => center.len(),
            Shape::Halfspaces(p) => p.dim(),
            Shape::Translate { shift, .. } => shift.len(),
        }
    }

    pub fn project(&self, x: &Vector) -> Result<Vector> {
        self.project_with(x, &ProjectionOptions::default())
    }

    pub fn project_with(&self, x: &Vector, opts: &ProjectionOptions) -> Result<Vector> {
        linalg::check_len("projection point", x, self.dim())?;
        match &self.shape {
            Shape::Box { lower, upper } => Ok(Vector::from_iterator(
                x.len(),
                (0..x.len()).map(|i| x[i].max(lower[i]).min(upper[i])),
            )),
            Shape::Ball { center, radius } => {
                let d = x - center;
                let n = d.norm();
                if n <= *radius {
                    Ok(x.clone())
                } else {
                    Ok(center + d * (*radius / n))
                }
            }
            Shape::Halfspaces(p) => project_polyhedron(p, x, opts),
            Shape::Translate { base, shift } => Ok(base.project_with(&(x - shift), opts)? + shift),
        }
    }

    pub fn distance(&self, x: &Vector) -> Result<f64> {
        Ok((x - self.project(x)?).norm())
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }

    /// Per-axis bounds when the set is an axis-aligned box (after shifts)
    /// or a one-dimensional polyhedron.
    fn as_box(&self) -> Option<(Vector, Vector)> {
        match &self.shape {
            Shape::Box { lower, upper } => Some((lower.clone(), upper.clone())),
            Shape::Translate { base, shift } => base.as_box().map(|(l, u)| (l + shift, u + shift)),
            Shape::Halfspaces(p) if p.dim() == 1 && p.eq_normals.nrows() == 0 => {
                let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
                for i in 0..p.normals.nrows() {
                    let (a, b) = (p.normals[(i, 0)], p.offsets[i]);
                    if a > 0.0 {
                        hi = hi.min(b / a);
                    } else {
                        lo = lo.max(b / a);
                    }
                }
                Some((Vector::from_element(1, lo), Vector::from_element(1, hi)))
            }
            _ => None,
        }
    }

    fn as_ball(&self) -> Option<(Vector, f64)> {
        match &self.shape {
            Shape::Ball { center, radius } => Some((center.clone(), *radius)),
            Shape::Translate { base, shift } => base.as_ball().map(|(c, r)| (c + shift, r)),
            _ => None,
        }
    }
}

/// Nearest point of `set` to `x`.
pub fn project_point(set: &ConvexSet, x: &Vector) -> Result<Vector> {
    set.project(x)
}

/// Euclidean distance from `x` to `set`.
pub fn distance(set: &ConvexSet, x: &Vector) -> Result<f64> {
    set.distance(x)
}

/// Hausdorff distance between two bounded boxes (exact, per-axis) or two
/// balls (`|c₁ − c₂| + |r₁ − r₂|`). Mixed or unbounded sets are rejected.
pub fn hausdorff_distance(a: &ConvexSet, b: &ConvexSet) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::dim("hausdorff operands", a.dim(), b.dim()));
    }
    if let (Some((la, ua)), Some((lb, ub))) = (a.as_box(), b.as_box()) {
        let finite = |v: &Vector| v.iter().all(|x| x.is_finite());
        if !(finite(&la) && finite(&ua) && finite(&lb) && finite(&ub)) {
            return Err(Error::Unsupported("Hausdorff distance of unbounded sets".into()));
        }
        // sup over a product set separates by axis
        let one_sided = |l1: &Vector, u1: &Vector, l2: &Vector, u2: &Vector| -> f64 {
            (0..l1.len())
                .map(|i| {
                    let e = (l2[i] - l1[i]).max(u1[i] - u2[i]).max(0.0);
                    e * e
                })
                .sum::<f64>()
                .sqrt()
        };
        return Ok(one_sided(&la, &ua, &lb, &ub).max(one_sided(&lb, &ub, &la, &ua)));
    }
    if let (Some((ca, ra)), Some((cb, rb))) = (a.as_ball(), b.as_ball()) {
        return Ok((ca - cb).norm() + (ra - rb).abs());
    }
    Err(Error::Unsupported(
        "Hausdorff distance is implemented for pairs of bounded boxes or pairs of balls".into(),
    ))
}

/// Euclidean projection onto a polyhedron.
pub fn project_polyhedron(p: &Polyhedron, x: &Vector, opts: &ProjectionOptions) -> Result<Vector> {
    linalg::check_len("projection point", x, p.dim())?;
    let k = p.normals.nrows();
    let r = p.eq_normals.nrows();
    if k == 0 && r == 0 {
        return Ok(x.clone());
    }
    let affine = (r > 0).then(|| AffineProjector::new(&p.eq_normals, &p.eq_offsets));
    if k == 0 {
        return Ok(affine.expect("equalities present").project(x));
    }
    let norms2: Vec<f64> = (0..k).map(|i| p.normals.row(i).norm_squared()).collect();
    let halfspace = |i: usize, v: &Vector| -> Vector {
        let a = p.normals.row(i).transpose();
        let excess = a.dot(v) - p.offsets[i];
        if excess > 0.0 {
            v - a * (excess / norms2[i])
        } else {
            v.clone()
        }
    };
    if k == 1 && affine.is_none() {
        return Ok(halfspace(0, x));
    }
    if p.violation(x) <= 0.0 {
        return Ok(x.clone());
    }

    let scale = 1.0 + x.norm();
    let mut y = x.clone();
    let mut incr: Vec<Vector> = vec![Vector::zeros(x.len()); k + usize::from(affine.is_some())];
    for sweep in 1..=opts.max_sweeps {
        let start = y.clone();
        // the iterate can stall for whole sweeps while the increments still
        // move, so both enter the stopping test
        let mut incr_change = 0.0;
        for i in 0..k {
            let v = &y + &incr[i];
            let next = halfspace(i, &v);
            let updated = &v - &next;
            incr_change += (&updated - &incr[i]).norm_squared();
            incr[i] = updated;
            y = next;
        }
        if let Some(aff) = &affine {
            let v = &y + &incr[k];
            let next = aff.project(&v);
            let updated = &v - &next;
            incr_change += (&updated - &incr[k]).norm_squared();
            incr[k] = updated;
            y = next;
        }
        let change = (&y - &start).norm().max(incr_change.sqrt());
        if sweep % 25 == 0 || change <= opts.tol * scale {
            if let Some(z) = polish(p, x, &y, &incr, affine.as_ref()) {
                return Ok(z);
            }
        }
        if change <= opts.tol * scale && p.violation(&y) <= opts.tol * scale {
            return Ok(y);
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_sweeps,
        residual: p.violation(&y),
        best: y.iter().copied().collect(),
    })
}

struct AffineProjector {
    e: Matrix,
    f: Vector,
    pinv: Matrix,
}

impl AffineProjector {
    fn new(e: &Matrix, f: &Vector) -> Self {
        let pinv = e
            .clone()
            .pseudo_inverse(1e-12 * linalg::spectral_norm(e).max(1.0))
            .expect("nonnegative epsilon");
        AffineProjector {
            e: e.clone(),
            f: f.clone(),
            pinv,
        }
    }

    fn project(&self, v: &Vector) -> Vector {
        v - &self.pinv * (&self.e * v - &self.f)
    }
}

/// Solves the projection exactly on a guessed active set and verifies KKT.
fn polish(
    p: &Polyhedron,
    x: &Vector,
    y: &Vector,
    incr: &[Vector],
    affine: Option<&AffineProjector>,
) -> Option<Vector> {
    let k = p.normals.nrows();
    let n = x.len();
    let scale = 1.0 + x.norm() + y.norm();
    let slack = &p.offsets - &p.normals * y;
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    // Dykstra increments are multiples of the active normals
    candidates.push((0..k).filter(|&i| incr[i].norm() > 1e-12 * scale).collect());
    for thr in [1e-9, 1e-7, 1e-5, 1e-3] {
        candidates.push((0..k).filter(|&i| slack[i] <= thr * scale).collect());
    }
    candidates.dedup();
    let r = p.eq_normals.nrows();
    let tol = 1e-10 * scale;
    for active in candidates {
        let rows = active.len() + r;
        if rows == 0 {
            continue;
        }
        let mut a = Matrix::zeros(rows, n);
        let mut b = Vector::zeros(rows);
        for (idx, &i) in active.iter().enumerate() {
            a.row_mut(idx).copy_from(&p.normals.row(i));
            b[idx] = p.offsets[i];
        }
        if let Some(aff) = affine {
            a.view_mut((active.len(), 0), (r, n)).copy_from(&aff.e);
            b.rows_mut(active.len(), r).copy_from(&aff.f);
        }
        // z = x − Aᵀλ with A z = b  ⇒  (A Aᵀ) λ = A x − b
        let aat = &a * a.transpose();
        let lambda = linalg::least_norm_solve(&aat, &(&a * x - &b));
        let z = x - a.transpose() * &lambda;
        if (&a * &z - &b).amax() > tol || p.violation(&z) > tol {
            continue;
        }
        if lambda.rows(0, active.len()).iter().any(|&l| l < -1e-10 * scale) {
            continue;
        }
        return Some(z);
    }
    None
}

/// A convex set moving in time: `S(t) = base(t) + shift(t)`, where a box
/// base may additionally move its bounds by `lower_offset(t)`/`upper_offset(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MovingSet {
    base: ConvexSet,
    shift: Option<Signal>,
    lower_offset: Option<Signal>,
    upper_offset: Option<Signal>,
}

impl MovingSet {
    pub fn new(
        base: ConvexSet,
        shift: Option<Signal>,
        lower_offset: Option<Signal>,
        upper_offset: Option<Signal>,
    ) -> Result<Self> {
        let n = base.dim();
        for s in [&shift, &lower_offset, &upper_offset].into_iter().flatten() {
            if s.dim() != n {
                return Err(Error::dim("moving-set signal", n, s.dim()));
            }
        }
        if (lower_offset.is_some() || upper_offset.is_some())
            && !matches!(base.shape(), Shape::Box { .. })
        {
            return Err(Error::InvalidArgument(
                "bound offsets are only supported for box bases".into(),
            ));
        }
        Ok(MovingSet {
            base,
            shift,
            lower_offset,
            upper_offset,
        })
    }

    /// A set that does not move.
    pub fn fixed(base: ConvexSet) -> Self {
        MovingSet {
            base,
            shift: None,
            lower_offset: None,
            upper_offset: None,
        }
    }

    pub fn base(&self) -> &ConvexSet {
        &self.base
    }

    pub fn shift(&self) -> Option<&Signal> {
        self.shift.as_ref()
    }

    pub fn lower_offset(&self) -> Option<&Signal> {
        self.lower_offset.as_ref()
    }

    pub fn upper_offset(&self) -> Option<&Signal> {
        self.upper_offset.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn at(&self, t: f64) -> Result<ConvexSet> {
        let mut set = match (&self.base.shape, &self.lower_offset, &self.upper_offset) {
            (Shape::Box { lower, upper }, lo, hi) if lo.is_some() || hi.is_some() => {
                let l = lo.as_ref().map_or(lower.clone(), |s| lower + s.eval(t));
                let u = hi.as_ref().map_or(upper.clone(), |s| upper + s.eval(t));
                ConvexSet::boxed(l, u)?
            }
            _ => self.base.clone(),
        };
        if let Some(s) = &self.shift {
            set = ConvexSet::translate(set, s.eval(t))?;
        }
        Ok(set)
    }

    /// Knot times of all motion signals.
    pub fn knot_times(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = [&self.shift, &self.lower_offset, &self.upper_offset]
            .into_iter()
            .flatten()
            .flat_map(|s| s.knot_times().iter().copied())
            .collect();
        ts.sort_by(|a, b| a.partial_cmp(b).expect("finite knots"));
        ts.dedup();
        ts
    }
}
