//! Time-dependent maximal monotone operators `F(t, ·)`.
//!
//! Every family supplies its resolvent `J_λ = (I + λF)⁻¹`; Yosida
//! approximations, minimal sections and graph membership are derived from
//! it or from closed forms.

mod scalar;

pub use scalar::ScalarGraph;

use crate::geometry::{ConvexSet, MovingSet};
use crate::linalg::{self, Matrix, Vector};
use crate::passivity::LcsOperator;
use crate::signal::Signal;
use crate::{Error, Result};

/// Domain tolerance used by minimal sections and the solver invariant.
pub const DOMAIN_TOL: f64 = 1e-8;

/// Affine Lipschitz perturbation `f(x) = G x + g`, `L = ‖G‖₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    matrix: Matrix,
    offset: Vector,
    lipschitz: f64,
}

impl AffineMap {
    pub fn new(matrix: Matrix, offset: Vector) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::dim("affine map (square)", matrix.nrows(), matrix.ncols()));
        }
        linalg::check_len("affine offset", &offset, matrix.nrows())?;
        let lipschitz = linalg::spectral_norm(&matrix);
        Ok(AffineMap {
            matrix,
            offset,
            lipschitz,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.matrix * x + &self.offset
    }
}

#[derive(Debug, Clone)]
pub enum OperatorFamily {
    /// `F(t, x) = N_{S(t)}(x)`.
    NormalConeMoving(MovingSet),
    /// Componentwise scalar graphs.
    ScalarGraphDiag(Vec<ScalarGraph>),
    /// The complementarity relation of a passive linear system.
    LcsRelation(LcsOperator),
}

/// A monotone family plus optional Lipschitz term `f` and input `u`.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    family: OperatorFamily,
    lipschitz_f: Option<AffineMap>,
    input_u: Option<Signal>,
}

/// Resolvent value with solver details (multipliers for LCS relations).
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventOutput {
    pub state: Vector,
    pub multipliers: Option<Vector>,
    pub pivots: usize,
}

impl OperatorSpec {
    pub fn normal_cone(set: MovingSet) -> Self {
        OperatorSpec {
            family: OperatorFamily::NormalConeMoving(set),
            lipschitz_f: None,
            input_u: None,
        }
    }

    pub fn scalar_diag(graphs: Vec<ScalarGraph>) -> Result<Self> {
        if graphs.is_empty() {
            return Err(Error::InvalidArgument("at least one scalar graph required".into()));
        }
        for g in &graphs {
            g.validate()?;
        }
        Ok(OperatorSpec {
            family: OperatorFamily::ScalarGraphDiag(graphs),
            lipschitz_f: None,
            input_u: None,
        })
    }

    pub(crate) fn lcs(op: LcsOperator) -> Self {
        OperatorSpec {
            family: OperatorFamily::LcsRelation(op),
            lipschitz_f: None,
            input_u: None,
        }
    }

    pub fn with_lipschitz(mut self, f: AffineMap) -> Result<Self> {
        if f.dim() != self.dim() {
            return Err(Error::dim("lipschitz_f", self.dim(), f.dim()));
        }
        self.lipschitz_f = Some(f);
        Ok(self)
    }

    pub fn with_input(mut self, u: Signal) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::dim("input_u", self.dim(), u.dim()));
        }
        self.input_u = Some(u);
        Ok(self)
    }

    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    pub fn lipschitz_f(&self) -> Option<&AffineMap> {
        self.lipschitz_f.as_ref()
    }

    pub fn input_u(&self) -> Option<&Signal> {
        self.input_u.as_ref()
    }

    /// No `f` and no `u`: the pure monotone inclusion `ẋ ∈ −F(t, x)`.
    pub fn is_monotone_only(&self) -> bool {
        self.lipschitz_f.is_none() && self.input_u.is_none()
    }

    pub fn lipschitz_constant(&self) -> f64 {
        self.lipschitz_f.as_ref().map_or(0.0, AffineMap::lipschitz)
    }

    pub fn dim(&self) -> usize {
        match &self.family {
            OperatorFamily::NormalConeMoving(s) => s.dim(),
            OperatorFamily::ScalarGraphDiag(g) => g.len(),
            OperatorFamily::LcsRelation(op) => op.system().n(),
        }
    }

    /// Times where the operator data have kinks.
    pub fn knot_times(&self) -> Vec<f64> {
        match &self.family {
            OperatorFamily::NormalConeMoving(s) => s.knot_times(),
            OperatorFamily::ScalarGraphDiag(_) => Vec::new(),
            OperatorFamily::LcsRelation(op) => op.system().v().knot_times().to_vec(),
        }
    }

    fn check(&self, x: &Vector) -> Result<()> {
        linalg::check_len("operator argument", x, self.dim())
    }

    /// `J_λ(x) = (I + λF(t, ·))⁻¹(x)`.
    pub fn resolvent(&self, t: f64, lambda: f64, x: &Vector) -> Result<Vector> {
        Ok(self.resolvent_detailed(t, lambda, x)?.state)
    }

    pub fn resolvent_detailed(&self, t: f64, lambda: f64, x: &Vector) -> Result<ResolventOutput> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("resolvent parameter must be positive, got {lambda}")));
        }
        self.check(x)?;
        match &self.family {
            OperatorFamily::NormalConeMoving(s) => Ok(ResolventOutput {
                state: s.at(t)?.project(x)?,
                multipliers: None,
                pivots: 0,
            }),
            OperatorFamily::ScalarGraphDiag(gs) => Ok(ResolventOutput {
                state: Vector::from_iterator(gs.len(), gs.iter().zip(x.iter()).map(|(g, &xi)| g.resolvent(lambda, xi))),
                multipliers: None,
                pivots: 0,
            }),
            OperatorFamily::LcsRelation(op) => {
                let step = op.resolvent(t, lambda, x)?;
                Ok(ResolventOutput {
                    state: step.state,
                    multipliers: Some(step.multipliers),
                    pivots: step.pivots,
                })
            }
        }
    }

    /// `F_λ(x) = (x − J_λ(x))/λ`.
    pub fn yosida(&self, t: f64, lambda: f64, x: &Vector) -> Result<Vector> {
        let j = self.resolvent(t, lambda, x)?;
        Ok((x - j) / lambda)
    }

    /// Closed domain of `F(t, ·)` as a convex set.
    pub fn domain(&self, t: f64) -> Result<ConvexSet> {
        match &self.family {
            OperatorFamily::NormalConeMoving(s) => s.at(t),
            OperatorFamily::ScalarGraphDiag(gs) => {
                let lower = Vector::from_iterator(gs.len(), gs.iter().map(|g| g.domain().0));
                let upper = Vector::from_iterator(gs.len(), gs.iter().map(|g| g.domain().1));
                ConvexSet::boxed(lower, upper)
            }
            OperatorFamily::LcsRelation(op) => Ok(ConvexSet::polyhedron(op.domain(t)?)),
        }
    }

    /// Nearest point of `cl dom F(t, ·)`.
    pub fn domain_project(&self, t: f64, x: &Vector) -> Result<Vector> {
        self.check(x)?;
        self.domain(t)?.project(x)
    }

    pub fn domain_distance(&self, t: f64, x: &Vector) -> Result<f64> {
        self.check(x)?;
        self.domain(t)?.distance(x)
    }

    /// Least-norm element `F⁰(t, x)`.
    pub fn minimal_section(&self, t: f64, x: &Vector) -> Result<Vector> {
        self.check(x)?;
        match &self.family {
            OperatorFamily::NormalConeMoving(s) => {
                let distance = s.at(t)?.distance(x)?;
                if distance > DOMAIN_TOL {
                    return Err(Error::OutOfDomain { distance });
                }
                Ok(Vector::zeros(x.len()))
            }
            OperatorFamily::ScalarGraphDiag(gs) => {
                let mut out = Vector::zeros(gs.len());
                for (i, g) in gs.iter().enumerate() {
                    let (lo, hi) = g.domain();
                    // snap points within tolerance of the domain onto it
                    let xi = if x[i] < lo && lo - x[i] <= DOMAIN_TOL {
                        lo
                    } else if x[i] > hi && x[i] - hi <= DOMAIN_TOL {
                        hi
                    } else {
                        x[i]
                    };
                    out[i] = g.minimal_section(xi).ok_or(Error::OutOfDomain {
                        distance: (lo - x[i]).max(x[i] - hi),
                    })?;
                }
                Ok(out)
            }
            OperatorFamily::LcsRelation(op) => op.minimal_section(t, x),
        }
    }

    /// Zero (within tolerance) iff `y ∈ F(t, x)`.
    pub fn graph_residual(&self, t: f64, x: &Vector, y: &Vector) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        match &self.family {
            OperatorFamily::ScalarGraphDiag(gs) => Ok(gs
                .iter()
                .enumerate()
                .map(|(i, g)| g.residual(x[i], y[i]).powi(2))
                .sum::<f64>()
                .sqrt()),
            _ => {
                let j = self.resolvent(t, 1.0, &(x + y))?;
                Ok((j - x).norm())
            }
        }
    }
}

/// Points asserted to lie on the graph of one operator at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    pairs: Vec<(Vector, Vector)>,
}

/// Residual accepted by [`GraphSample::new`].
pub const GRAPH_TOL: f64 = 1e-9;

impl GraphSample {
    /// Verifies every pair against `graph F(t, ·)`.
    pub fn new(op: &OperatorSpec, t: f64, pairs: Vec<(Vector, Vector)>) -> Result<Self> {
        for (k, (x, y)) in pairs.iter().enumerate() {
            let r = op.graph_residual(t, x, y)?;
            if r > GRAPH_TOL {
                return Err(Error::InvalidArgument(format!(
                    "pair {k} is not on the graph (residual {r:e})"
                )));
            }
        }
        Self::unverified(pairs)
    }

    /// Accepts pairs as given; the caller vouches for graph membership.
    pub fn unverified(pairs: Vec<(Vector, Vector)>) -> Result<Self> {
        let Some((x0, _)) = pairs.first() else {
            return Err(Error::EmptySet("graph sample has no pairs".into()));
        };
        let n = x0.len();
        for (x, y) in &pairs {
            linalg::check_len("graph sample x", x, n)?;
            linalg::check_len("graph sample y", y, n)?;
        }
        Ok(GraphSample { pairs })
    }

    pub fn pairs(&self) -> &[(Vector, Vector)] {
        &self.pairs
    }

    pub fn dim(&self) -> usize {
        self.pairs[0].0.len()
    }
}

/// Sampled lower bound on the pseudo-distance between two monotone graphs:
/// `max ⟨y₁ − y₂, x₂ − x₁⟩ / (1 + |y₁| + |y₂|)` over all cross pairs.
pub fn dis_lower_bound(g1: &GraphSample, g2: &GraphSample) -> Result<f64> {
    if g1.dim() != g2.dim() {
        return Err(Error::dim("graph samples", g1.dim(), g2.dim()));
    }
    let mut best = f64::NEG_INFINITY;
    for (x1, y1) in &g1.pairs {
        for (x2, y2) in &g2.pairs {
            let num = (y1 - y2).dot(&(x2 - x1));
            best = best.max(num / (1.0 + y1.norm() + y2.norm()));
        }
    }
    Ok(best)
}

/// Free-function forms of the operator interface.
pub fn resolvent(op: &OperatorSpec, t: f64, lambda: f64, x: &Vector) -> Result<Vector> {
    op.resolvent(t, lambda, x)
}

pub fn yosida(op: &OperatorSpec, t: f64, lambda: f64, x: &Vector) -> Result<Vector> {
    op.yosida(t, lambda, x)
}

pub fn minimal_section(op: &OperatorSpec, t: f64, x: &Vector) -> Result<Vector> {
    op.minimal_section(t, x)
}

pub fn domain_project(op: &OperatorSpec, t: f64, x: &Vector) -> Result<Vector> {
    op.domain_project(t, x)
}

pub fn graph_residual(op: &OperatorSpec, t: f64, x: &Vector, y: &Vector) -> Result<f64> {
    op.graph_residual(t, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn abs() -> OperatorSpec {
        OperatorSpec::scalar_diag(vec![ScalarGraph::AbsSubdifferential]).unwrap()
    }

    fn unit_interval() -> OperatorSpec {
        OperatorSpec::normal_cone(MovingSet::fixed(ConvexSet::interval(0.0, 1.0).unwrap()))
    }

    #[test]
    fn resolvent_examples() {
        assert_eq!(unit_interval().resolvent(0.0, 5.0, &vector(&[2.0])).unwrap()[0], 1.0);
        assert_eq!(abs().resolvent(0.0, 1.0, &vector(&[3.0])).unwrap()[0], 2.0);
        let slope = OperatorSpec::scalar_diag(vec![ScalarGraph::LinearSlope { slope: 1.0 }]).unwrap();
        assert!((slope.resolvent(0.0, 0.1, &vector(&[1.0])).unwrap()[0] - 1.0 / 1.1).abs() < 1e-15);
        assert!(abs().resolvent(0.0, 0.0, &vector(&[1.0])).is_err());
    }

    #[test]
    fn yosida_examples() {
        assert_eq!(abs().yosida(0.0, 1.0, &vector(&[3.0])).unwrap()[0], 1.0);
        assert_eq!(abs().yosida(0.0, 0.25, &vector(&[0.5])).unwrap()[0], 1.0);
        assert_eq!(unit_interval().yosida(0.0, 2.0, &vector(&[3.0])).unwrap()[0], 1.0);
    }

    #[test]
    fn minimal_sections() {
        assert_eq!(abs().minimal_section(0.0, &vector(&[0.0])).unwrap()[0], 0.0);
        assert_eq!(unit_interval().minimal_section(0.0, &vector(&[0.5])).unwrap()[0], 0.0);
        assert!(matches!(
            unit_interval().minimal_section(0.0, &vector(&[2.0])),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn moving_domain_projection() {
        let shift = Signal::scalar(&[(0.0, 0.0), (2.0, 2.0)]).unwrap();
        let set = MovingSet::new(ConvexSet::interval(0.0, 2.0).unwrap(), Some(shift), None, None).unwrap();
        let op = OperatorSpec::normal_cone(set);
        assert_eq!(op.domain_project(0.0, &vector(&[-1.0])).unwrap()[0], 0.0);
        assert_eq!(op.domain_project(1.0, &vector(&[0.5])).unwrap()[0], 1.0);
        assert_eq!(op.domain_project(0.0, &vector(&[1.5])).unwrap()[0], 1.5);
    }

    #[test]
    fn graph_residual_examples() {
        let r = |x: f64, y: f64| abs().graph_residual(0.0, &vector(&[x]), &vector(&[y])).unwrap();
        assert_eq!(r(0.5, 1.0), 0.0);
        assert_eq!(r(0.0, 0.5), 0.0);
        assert_eq!(r(1.0, 2.0), 1.0);
    }

    #[test]
    fn dis_examples() {
        let rho = 1.0;
        let g1 = GraphSample::unverified(vec![(vector(&[rho + 1.0]), vector(&[0.0]))]).unwrap();
        let g2 = GraphSample::unverified(vec![(vector(&[0.0]), vector(&[1.0]))]).unwrap();
        assert_eq!(dis_lower_bound(&g1, &g2).unwrap(), 1.0);
        assert_eq!(dis_lower_bound(&g1, &g1).unwrap(), 0.0);
    }

    #[test]
    fn graph_sample_rejects_off_graph_pairs() {
        let op = abs();
        assert!(GraphSample::new(&op, 0.0, vec![(vector(&[1.0]), vector(&[2.0]))]).is_err());
        assert!(GraphSample::new(&op, 0.0, vec![(vector(&[1.0]), vector(&[1.0]))]).is_ok());
        assert!(GraphSample::unverified(vec![]).is_err());
    }

    #[test]
    fn affine_map_lipschitz() {
        let f = AffineMap::new(linalg::matrix(&[&[0.0, 1.0], &[-1.0, 0.0]]), Vector::zeros(2)).unwrap();
        assert!((f.lipschitz() - 1.0).abs() < 1e-12);
        assert!(AffineMap::new(Matrix::zeros(2, 2), Vector::zeros(3)).is_err());
    }
}
