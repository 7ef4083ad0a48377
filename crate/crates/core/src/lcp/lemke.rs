//! Lemke's complementary pivoting with a lexicographic ratio test.

use std::cmp::Ordering;

use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemkeStatus {
    Solved,
    RayTermination,
    PivotLimit,
}

#[derive(Debug, Clone)]
pub struct LemkeOutcome {
    pub z: Vector,
    pub pivots: usize,
    pub status: LemkeStatus,
    /// True when every basic variable of the terminal basis is strictly
    /// positive; for psd `M` this certifies that the solution is unique.
    pub nondegenerate: bool,
}

const PIVOT_EPS: f64 = 1e-12;

/// Runs Lemke's method with covering vector `1` on `w = q + M z`.
///
/// No perturbation is applied to `q`; degeneracy is resolved by the
/// lexicographic rule on `(rhs, B⁻¹)` rows.
pub fn lemke(q: &Vector, m: &Matrix, max_pivots: usize) -> LemkeOutcome {
    let n = q.len();
    if q.iter().all(|&qi| qi >= 0.0) {
        return LemkeOutcome {
            z: Vector::zeros(n),
            pivots: 0,
            status: LemkeStatus::Solved,
            nondegenerate: q.iter().all(|&qi| qi > 0.0),
        };
    }
    let mut t = Tab::new(q, m);
    let z0 = 2 * n;

    // initial pivot: z0 enters, the lexicographically smallest (rhs, B⁻¹)
    // row (most negative q) leaves
    let r = (0..n)
        .min_by(|&a, &b| t.lex_cmp_scaled(a, 1.0, b, 1.0))
        .expect("nonempty");
    let mut leaving = t.basis[r];
    t.pivot(r, z0);
    let mut pivots = 1;

    loop {
        let entering = if leaving < n { leaving + n } else { leaving - n };
        let rows: Vec<usize> = (0..n).filter(|&i| t.a[i][entering] > PIVOT_EPS).collect();
        if rows.is_empty() {
            return t.outcome(pivots, LemkeStatus::RayTermination);
        }
        // prefer z0 leaving among lexicographic ties so the run stops early
        let r = *rows
            .iter()
            .min_by(|&&a, &&b| {
                t.lex_cmp_scaled(a, t.a[a][entering], b, t.a[b][entering])
                    .then_with(|| (t.basis[b] == z0).cmp(&(t.basis[a] == z0)))
            })
            .expect("nonempty");
        leaving = t.basis[r];
        t.pivot(r, entering);
        pivots += 1;
        if leaving == z0 {
            return t.outcome(pivots, LemkeStatus::Solved);
        }
        if pivots >= max_pivots {
            return t.outcome(pivots, LemkeStatus::PivotLimit);
        }
    }
}

struct Tab {
    n: usize,
    q: Vector,
    m: Matrix,
    // columns: w (n) | z (n) | z0 | rhs
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tab {
    fn new(q: &Vector, m: &Matrix) -> Self {
        let n = q.len();
        let mut a = vec![vec![0.0; 2 * n + 2]; n];
        for i in 0..n {
            a[i][i] = 1.0;
            for j in 0..n {
                a[i][n + j] = -m[(i, j)];
            }
            a[i][2 * n] = -1.0;
            a[i][2 * n + 1] = q[i];
        }
        Tab {
            n,
            q: q.clone(),
            m: m.clone(),
            a,
            basis: (0..n).collect(),
        }
    }

    fn rhs(&self) -> usize {
        2 * self.n + 1
    }

    /// Compares `(rhs_i, B⁻¹_i)/d_i` against `(rhs_j, B⁻¹_j)/d_j`.
    fn lex_cmp_scaled(&self, i: usize, di: f64, j: usize, dj: f64) -> Ordering {
        let rhs = self.rhs();
        let key = |row: usize, d: f64, k: usize| -> f64 {
            if k == 0 {
                self.a[row][rhs] / d
            } else {
                self.a[row][k - 1] / d
            }
        };
        for k in 0..=self.n {
            let x = key(i, di, k);
            let y = key(j, dj, k);
            let tol = 1e-11 * (1.0 + x.abs().max(y.abs()));
            if (x - y).abs() > tol {
                return x.partial_cmp(&y).unwrap_or(Ordering::Equal);
            }
        }
        Ordering::Equal
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= piv;
        }
        let prow = self.a[r].clone();
        for i in 0..self.n {
            if i == r {
                continue;
            }
            let f = self.a[i][c];
            if f != 0.0 {
                for (v, p) in self.a[i].iter_mut().zip(prow.iter()) {
                    *v -= f * p;
                }
                self.a[i][c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Basic values recomputed from the original data, `[I, −M]_B x_B = q`,
    /// which removes the rounding accumulated over the pivots.
    fn refined(&self) -> Option<Vector> {
        let n = self.n;
        if self.basis.iter().any(|&b| b >= 2 * n) {
            return None;
        }
        let basis = Matrix::from_fn(n, n, |i, k| {
            let b = self.basis[k];
            if b < n {
                if i == b {
                    1.0
                } else {
                    0.0
                }
            } else {
                -self.m[(i, b - n)]
            }
        });
        let x = basis.lu().solve(&self.q)?;
        if x.iter().any(|v| !v.is_finite() || *v < -1e-9) {
            return None;
        }
        let mut z = Vector::zeros(n);
        for (k, &b) in self.basis.iter().enumerate() {
            if b >= n {
                z[b - n] = x[k].max(0.0);
            }
        }
        Some(z)
    }

    fn residual(&self, z: &Vector) -> f64 {
        let w = &self.q + &self.m * z;
        z.dot(&w).abs() + w.iter().map(|x| (-x).max(0.0)).sum::<f64>()
    }

    fn outcome(&self, pivots: usize, status: LemkeStatus) -> LemkeOutcome {
        let n = self.n;
        let rhs = self.rhs();
        let mut z = Vector::zeros(n);
        let mut nondegenerate = true;
        for (i, &b) in self.basis.iter().enumerate() {
            let value = self.a[i][rhs].max(0.0);
            if value <= 1e-12 {
                nondegenerate = false;
            }
            if (n..2 * n).contains(&b) {
                z[b - n] = value;
            }
        }
        if status == LemkeStatus::Solved {
            if let Some(r) = self.refined() {
                if self.residual(&r) <= self.residual(&z) {
                    z = r;
                }
            }
        }
        LemkeOutcome {
            z,
            pivots,
            status,
            nondegenerate,
        }
    }
}
