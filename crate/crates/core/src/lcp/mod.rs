//! Linear complementarity problems with positive semi-definite matrices.
//!
//! `LCP(q, M)`: find `z ≥ 0` with `w = q + M z ≥ 0` and `zᵀw = 0`.
//! For psd `M` the problem is solvable exactly when `q` lies in the dual
//! cone `Q_M⁺` of `Q_M = SOL(0, M)`, and the solution set is a polyhedron
//! with a unique least-norm element.

mod cone;
mod enumerate;
mod lemke;
pub mod simplex;

pub use cone::{cone_generators, dual_cone_membership, ConeCertificate, ConeReport};
pub use enumerate::{enumerate_lcp, Enumeration, MAX_ENUMERATION_SIZE};
pub use lemke::{lemke, LemkeOutcome, LemkeStatus};
pub use simplex::{lp_feasible, lp_feasible_with_equalities, FeasibilityReport, LpOutcome};

use crate::geometry::{project_polyhedron, Polyhedron, ProjectionOptions};
use crate::linalg::{self, Matrix, Vector};
use crate::{Error, Result};

/// Pivot budget per unit of problem size.
pub const PIVOTS_PER_ROW: usize = 50;

/// The data `(q, M)` of a linear complementarity problem.
#[derive(Debug, Clone, PartialEq)]
pub struct LcpProblem {
    q: Vector,
    m: Matrix,
}

impl LcpProblem {
    pub fn new(q: Vector, m: Matrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::dim("LCP matrix (square)", m.nrows(), m.ncols()));
        }
        if q.len() != m.nrows() {
            return Err(Error::dim("LCP vector q", m.nrows(), q.len()));
        }
        Ok(LcpProblem { q, m })
    }

    /// Reads `{"m": [[…], …], "q": […]}` with `M` given row by row.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            m: Vec<Vec<f64>>,
            q: Vec<f64>,
        }
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: File = serde_path_to_error::deserialize(de).map_err(|e| Error::Scenario {
            path: e.path().to_string(),
            message: e.into_inner().to_string(),
        })?;
        let n = file.q.len();
        let m = linalg::matrix_from_rows(&file.m, n).ok_or_else(|| Error::Scenario {
            path: "m".into(),
            message: format!("expected a {n}x{n} matrix to match q"),
        })?;
        if file.m.len() != n {
            return Err(Error::dim("LCP matrix rows", n, file.m.len()));
        }
        if m.iter().chain(file.q.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("LCP data must be finite".into()));
        }
        LcpProblem::new(Vector::from_vec(file.q), m)
    }

    pub fn q(&self) -> &Vector {
        &self.q
    }

    pub fn m(&self) -> &Matrix {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.q.len()
    }

    pub fn w(&self, z: &Vector) -> Vector {
        &self.q + &self.m * z
    }

    /// `|zᵀw|` plus the negative parts of `z` and `w`.
    pub fn residual(&self, z: &Vector) -> f64 {
        let w = self.w(z);
        let neg = |v: &Vector| v.iter().map(|x| (-x).max(0.0)).sum::<f64>();
        z.dot(&w).abs() + neg(z) + neg(&w)
    }

    /// Residual threshold accepted for a certified solution.
    pub fn tolerance(&self) -> f64 {
        1e-9 * (1.0 + self.q.norm())
    }

    pub fn require_psd(&self) -> Result<()> {
        let min_eigenvalue = linalg::min_sym_eigenvalue(&self.m);
        if min_eigenvalue >= -linalg::PSD_TOL {
            Ok(())
        } else {
            Err(Error::NotPsd { min_eigenvalue })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcpStatus {
    Solved,
    Infeasible,
    RayTermination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcpSolution {
    pub z: Vector,
    pub w: Vector,
    pub residual: f64,
    pub pivots: usize,
    pub status: LcpStatus,
    /// Terminal basis was nondegenerate, so `SOL(q, M) = {z}`.
    pub unique: bool,
}

impl LcpSolution {
    pub fn is_solved(&self) -> bool {
        self.status == LcpStatus::Solved
    }
}

/// Solves `LCP(q, M)` for psd `M` by Lemke pivoting.
///
/// Returns `status = Infeasible` when `q ∉ Q_M⁺` (ray termination is the
/// infeasibility certificate for psd matrices).
pub fn solve_lcp(p: &LcpProblem) -> Result<LcpSolution> {
    p.require_psd()?;
    solve_lcp_unchecked(p, LcpStatus::Infeasible)
}

pub(crate) fn solve_lcp_unchecked(p: &LcpProblem, on_ray: LcpStatus) -> Result<LcpSolution> {
    let limit = PIVOTS_PER_ROW * p.size().max(1);
    let out = lemke(&p.q, &p.m, limit);
    let status = match out.status {
        LemkeStatus::Solved => LcpStatus::Solved,
        LemkeStatus::RayTermination => on_ray,
        LemkeStatus::PivotLimit => return Err(Error::PivotLimit { limit }),
    };
    let w = p.w(&out.z);
    let residual = p.residual(&out.z);
    Ok(LcpSolution {
        z: out.z,
        w,
        residual,
        pivots: out.pivots,
        status,
        unique: status == LcpStatus::Solved && out.nondegenerate,
    })
}

/// Least-norm element of `SOL(q, M)` for psd `M` and `q ∈ Q_M⁺`.
pub fn least_norm_solution(p: &LcpProblem) -> Result<Vector> {
    let sol = solve_lcp(p)?;
    if !sol.is_solved() {
        return Err(Error::Infeasible("q is not in the dual cone Q_M+".into()));
    }
    least_norm_from(p, &sol)
}

/// Least-norm solution given one solution `z̄` of the same problem.
pub(crate) fn least_norm_from(p: &LcpProblem, sol: &LcpSolution) -> Result<Vector> {
    if sol.unique || sol.z.iter().all(|&v| v == 0.0) {
        return Ok(sol.z.clone());
    }
    let poly = solution_polyhedron(p, &sol.z);
    let opts = ProjectionOptions {
        tol: 1e-9,
        ..ProjectionOptions::default()
    };
    let origin = Vector::zeros(p.size());
    match project_polyhedron(&poly, &origin, &opts) {
        Ok(z) => Ok(z),
        Err(Error::NonConvergence { best, .. }) => Ok(Vector::from_vec(best)),
        Err(e) => Err(e),
    }
}

/// `SOL(q, M)` as a polyhedron, built from one known solution `z̄`:
/// `z ≥ 0`, `q + M z ≥ 0`, `(M + Mᵀ)(z − z̄) = 0`, `qᵀ(z − z̄) = 0`,
/// `zᵀ(q + M z̄) = 0`, `z̄ᵀ(q + M z) = 0`.
pub fn solution_polyhedron(p: &LcpProblem, zbar: &Vector) -> Polyhedron {
    let n = p.size();
    let mut ineq = Matrix::zeros(2 * n, n);
    let mut ineq_rhs = Vector::zeros(2 * n);
    for i in 0..n {
        ineq[(i, i)] = -1.0;
        for j in 0..n {
            ineq[(n + i, j)] = -p.m[(i, j)];
        }
        ineq_rhs[n + i] = p.q[i];
    }
    let sym = &p.m + p.m.transpose();
    let wbar = p.w(zbar);
    let zbar_m = (zbar.transpose() * &p.m).transpose();
    let mut eq_rows: Vec<Vector> = Vec::new();
    let mut eq_rhs: Vec<f64> = Vec::new();
    let sym_zbar = &sym * zbar;
    for i in 0..n {
        eq_rows.push(sym.row(i).transpose());
        eq_rhs.push(sym_zbar[i]);
    }
    eq_rows.push(p.q.clone());
    eq_rhs.push(p.q.dot(zbar));
    eq_rows.push(wbar);
    eq_rhs.push(0.0);
    eq_rows.push(zbar_m);
    eq_rhs.push(-zbar.dot(&p.q));
    // drop numerically null rows (e.g. skew-symmetric M)
    let keep: Vec<usize> = (0..eq_rows.len())
        .filter(|&i| eq_rows[i].norm() > 1e-14)
        .collect();
    let eq = Matrix::from_fn(keep.len(), n, |i, j| eq_rows[keep[i]][j]);
    let eq_b = Vector::from_iterator(keep.len(), keep.iter().map(|&i| eq_rhs[i]));
    Polyhedron::from_parts_unchecked(ineq, ineq_rhs, eq, eq_b)
}

/// `min ½ sᵀQs + cᵀs` over `{s ≥ 0, G s ≤ h}` with psd `Q`, solved as the
/// psd KKT complementarity problem. `None` when the feasible set is empty.
pub fn solve_qp_nonneg(q_mat: &Matrix, c: &Vector, g: &Matrix, h: &Vector) -> Result<Option<Vector>> {
    let n = c.len();
    let k = g.nrows();
    let mut m = Matrix::zeros(n + k, n + k);
    m.view_mut((0, 0), (n, n)).copy_from(q_mat);
    m.view_mut((0, n), (n, k)).copy_from(&g.transpose());
    m.view_mut((n, 0), (k, n)).copy_from(&(-g));
    let mut qq = Vector::zeros(n + k);
    qq.rows_mut(0, n).copy_from(c);
    qq.rows_mut(n, k).copy_from(h);
    let p = LcpProblem::new(qq, m)?;
    let sol = solve_lcp_unchecked(&p, LcpStatus::RayTermination)?;
    Ok(sol.is_solved().then(|| sol.z.rows(0, n).into_owned()))
}
