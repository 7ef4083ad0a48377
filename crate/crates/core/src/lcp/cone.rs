//! The cone `Q_M = SOL(0, M)` and membership in its dual `Q_M⁺`.

use super::simplex::{maximize, LpOutcome};
use super::{solve_lcp, LcpProblem, MAX_ENUMERATION_SIZE};
use crate::linalg::{self, Matrix, Vector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ConeCertificate {
    /// A solution of `LCP(q, M)`: proves `q ∈ Q_M⁺`.
    Solution(Vector),
    /// An element `z ∈ Q_M` with `⟨q, z⟩ < 0`: proves `q ∉ Q_M⁺`.
    Separator(Vector),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeReport {
    pub member: bool,
    pub certificate: ConeCertificate,
}

impl ConeReport {
    /// Re-checks the certificate against `(q, M)` at tolerance `tol`.
    pub fn verify(&self, q: &Vector, m: &Matrix, tol: f64) -> bool {
        match &self.certificate {
            ConeCertificate::Solution(z) => {
                let w = q + m * z;
                self.member
                    && z.iter().all(|&v| v >= -tol)
                    && w.iter().all(|&v| v >= -tol)
                    && z.dot(&w).abs() <= tol * (1.0 + q.norm())
            }
            ConeCertificate::Separator(z) => {
                let mz = m * z;
                let sym = (m + m.transpose()) * z;
                !self.member
                    && z.iter().all(|&v| v >= -tol)
                    && mz.iter().all(|&v| v >= -tol)
                    && sym.norm() <= tol
                    && q.dot(z) < -tol
            }
        }
    }
}

/// Decides `q ∈ Q_M⁺` for psd `M` and attaches a certificate.
pub fn dual_cone_membership(q: &Vector, m: &Matrix) -> Result<ConeReport> {
    let p = LcpProblem::new(q.clone(), m.clone())?;
    let sol = solve_lcp(&p)?;
    if sol.is_solved() {
        return Ok(ConeReport {
            member: true,
            certificate: ConeCertificate::Solution(sol.z),
        });
    }
    // min qᵀz over z ≥ 0, Mz ≥ 0, (M + Mᵀ) z = 0, 1ᵀz ≤ 1
    let n = q.len();
    let mut a = Matrix::zeros(2 * n + 1, n);
    for i in 0..n {
        a[(i, i)] = -1.0;
        for j in 0..n {
            a[(n + i, j)] = -m[(i, j)];
        }
        a[(2 * n, i)] = 1.0;
    }
    let mut b = Vector::zeros(2 * n + 1);
    b[2 * n] = 1.0;
    let sym = m + m.transpose();
    match maximize(&(-q), &a, &b, &sym, &Vector::zeros(n)) {
        LpOutcome::Optimal { x, value } if value > 0.0 => Ok(ConeReport {
            member: false,
            certificate: ConeCertificate::Separator(x),
        }),
        _ => Err(Error::Infeasible(
            "Lemke reported ray termination but no separating element of Q_M was found".into(),
        )),
    }
}

/// Extreme rays (unit length) of `Q_M = {z ≥ 0, M z ≥ 0, (M + Mᵀ) z = 0}`
/// for psd `M`, by double description starting from the orthant.
///
/// The dual cone is then `Q_M⁺ = {q : ⟨g, q⟩ ≥ 0 for every generator g}`.
pub fn cone_generators(m: &Matrix) -> Result<Vec<Vector>> {
    let n = m.nrows();
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    let min_eigenvalue = linalg::min_sym_eigenvalue(m);
    if min_eigenvalue < -linalg::PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    let sym = m + m.transpose();

    let mut processed: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    let mut rays: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    let mut constraints: Vec<(Vector, bool)> = Vec::new();
    for i in 0..n {
        constraints.push((m.row(i).transpose(), false));
    }
    for i in 0..n {
        constraints.push((sym.row(i).transpose(), true));
    }

    for (a, is_eq) in constraints {
        let an = a.norm();
        if an <= 1e-14 {
            continue;
        }
        let a = a / an;
        let vals: Vec<f64> = rays.iter().map(|r| a.dot(r)).collect();
        let tol = 1e-10;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > tol).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < -tol).collect();
        let mut next: Vec<Vector> = (0..rays.len())
            .filter(|&i| vals[i].abs() <= tol || (!is_eq && vals[i] > tol))
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &q in &neg {
                if adjacent(&rays[p], &rays[q], &processed, n) {
                    let r = &rays[q] * vals[p] - &rays[p] * vals[q];
                    push_unique(&mut next, r);
                }
            }
        }
        processed.push(a);
        rays = next;
    }
    Ok(rays)
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(n);
    v[i] = 1.0;
    v
}

fn push_unique(rays: &mut Vec<Vector>, r: Vector) {
    let norm = r.norm();
    if norm <= 1e-14 {
        return;
    }
    let r = r / norm;
    if !rays.iter().any(|x| (x - &r).norm() <= 1e-9) {
        rays.push(r);
    }
}

fn adjacent(p: &Vector, q: &Vector, processed: &[Vector], n: usize) -> bool {
    if n < 2 {
        return true;
    }
    let common: Vec<&Vector> = processed
        .iter()
        .filter(|c| c.dot(p).abs() <= 1e-10 && c.dot(q).abs() <= 1e-10)
        .collect();
    if common.len() < n - 2 {
        return false;
    }
    let mat = Matrix::from_fn(common.len(), n, |i, j| common[i][j]);
    linalg::rank(&mat, 1e-9) == n - 2
}
