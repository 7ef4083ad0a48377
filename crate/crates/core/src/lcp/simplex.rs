//! Dense two-phase simplex for small linear programs with free variables.
//!
//! Used for feasibility and strict-feasibility questions (nonempty
//! polyhedra, relative-interior conditions, dual-cone separators). Bland's
//! rule keeps it finite under degeneracy.

use crate::linalg::{Matrix, Vector};

const EPS: f64 = 1e-11;
const FEAS_TOL: f64 = 1e-9;
/// Slack above which a system counts as strictly feasible.
pub const STRICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vector, value: f64 },
    Infeasible,
    Unbounded,
}

/// `max cᵀx  s.t.  A x ≤ b,  E x = f`, with `x` free.
pub fn maximize(c: &Vector, a: &Matrix, b: &Vector, e: &Matrix, f: &Vector) -> LpOutcome {
    let n = c.len();
    assert_eq!(a.ncols(), n, "inequality matrix width");
    assert_eq!(e.ncols(), n, "equality matrix width");
    assert_eq!(a.nrows(), b.len());
    assert_eq!(e.nrows(), f.len());
    Tableau::build(a, b, e, f).solve(c)
}

struct Tableau {
    n: usize,
    p: usize,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    // column layout: x⁺ (n) | x⁻ (n) | slacks (p) | artificials (p + r)
    fn build(a: &Matrix, b: &Vector, e: &Matrix, f: &Vector) -> Self {
        let n = a.ncols();
        let p = a.nrows();
        let r = e.nrows();
        let m = p + r;
        let ncols = 2 * n + p + m;
        let mut rows = vec![vec![0.0; ncols]; m];
        let mut rhs = vec![0.0; m];
        for i in 0..m {
            let (coef, bi) = if i < p {
                (a.row(i).transpose(), b[i])
            } else {
                (e.row(i - p).transpose(), f[i - p])
            };
            let sign = if bi < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                rows[i][j] = sign * coef[j];
                rows[i][n + j] = -sign * coef[j];
            }
            if i < p {
                rows[i][2 * n + i] = sign;
            }
            rows[i][2 * n + p + i] = 1.0;
            rhs[i] = sign * bi;
        }
        let basis = (0..m).map(|i| 2 * n + p + i).collect();
        Tableau {
            n,
            p,
            rows,
            rhs,
            basis,
            ncols,
        }
    }

    fn art_start(&self) -> usize {
        2 * self.n + self.p
    }

    fn pivot(&mut self, r: usize, c: usize, d: &mut [f64], val: &mut f64) {
        let piv = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= piv;
        }
        self.rhs[r] /= piv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r];
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][c];
            if factor != 0.0 {
                for (v, pv) in self.rows[i].iter_mut().zip(prow.iter()) {
                    *v -= factor * pv;
                }
                self.rhs[i] -= factor * prhs;
                if self.rhs[i].abs() < 1e-14 {
                    self.rhs[i] = 0.0;
                }
            }
        }
        let dc = d[c];
        if dc != 0.0 {
            for (v, pv) in d.iter_mut().zip(prow.iter()) {
                *v -= dc * pv;
            }
            *val += dc * prhs;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on reduced costs `d`; `false` if unbounded.
    fn iterate(&mut self, d: &mut [f64], val: &mut f64, allowed: usize) -> bool {
        let max_iter = 50 * (self.ncols + self.rows.len()) + 1000;
        for _ in 0..max_iter {
            let Some(c) = (0..allowed).find(|&j| d[j] > EPS) else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > EPS {
                    let ratio = self.rhs[i] / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-13
                                || (ratio <= br + 1e-13 && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c, d, val),
            }
        }
        // Bland's rule terminates; reaching here means numerical trouble.
        true
    }

    fn solve(mut self, c: &Vector) -> LpOutcome {
        let n = self.n;
        let art = self.art_start();
        let m = self.rows.len();

        // phase 1: maximize −Σ artificials
        let mut d = vec![0.0; self.ncols];
        let mut val = 0.0;
        for i in 0..m {
            for j in 0..art {
                d[j] += self.rows[i][j];
            }
            val -= self.rhs[i];
        }
        self.iterate(&mut d, &mut val, art);
        let scale = 1.0 + self.rhs.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
        if val < -FEAS_TOL * scale {
            return LpOutcome::Infeasible;
        }

        // drive artificials out of the basis; redundant rows are dropped
        let mut keep = vec![true; m];
        for r in 0..m {
            if self.basis[r] >= art {
                match (0..art).find(|&j| self.rows[r][j].abs() > 1e-9) {
                    Some(j) => {
                        let mut dummy = vec![0.0; self.ncols];
                        let mut dv = 0.0;
                        self.pivot(r, j, &mut dummy, &mut dv);
                    }
                    None => keep[r] = false,
                }
            }
        }
        if keep.iter().any(|k| !k) {
            let mut idx = 0;
            self.rows.retain(|_| {
                idx += 1;
                keep[idx - 1]
            });
            let mut idx = 0;
            self.rhs.retain(|_| {
                idx += 1;
                keep[idx - 1]
            });
            let mut idx = 0;
            self.basis.retain(|_| {
                idx += 1;
                keep[idx - 1]
            });
        }

        // phase 2
        let cost = |j: usize| -> f64 {
            if j < n {
                c[j]
            } else if j < 2 * n {
                -c[j - n]
            } else {
                0.0
            }
        };
        let mut d: Vec<f64> = (0..self.ncols).map(cost).collect();
        let mut val = 0.0;
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = cost(bj);
            if cb != 0.0 {
                for j in 0..self.ncols {
                    d[j] -= cb * self.rows[i][j];
                }
                val += cb * self.rhs[i];
            }
        }
        for j in art..self.ncols {
            d[j] = 0.0;
        }
        if !self.iterate(&mut d, &mut val, art) {
            return LpOutcome::Unbounded;
        }
        let mut x = Vector::zeros(n);
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < n {
                x[bj] += self.rhs[i];
            } else if bj < 2 * n {
                x[bj - n] -= self.rhs[i];
            }
        }
        let value = c.dot(&x);
        LpOutcome::Optimal { x, value }
    }
}

/// Outcome of a (strict) feasibility query.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Best uniform slack `s*` (rows normalized); `+∞` when unbounded.
    /// `None` in non-strict mode.
    pub slack: Option<f64>,
    pub strictly_feasible: Option<bool>,
    /// A feasible (or maximally interior) point when one exists.
    pub point: Option<Vector>,
}

/// Feasibility of `{x : aᵢᵀx ≤ bᵢ}`; strict mode maximizes a common slack.
pub fn lp_feasible(normals: &Matrix, offsets: &Vector, strict: bool) -> FeasibilityReport {
    let n = normals.ncols();
    lp_feasible_with_equalities(normals, offsets, &Matrix::zeros(0, n), &Vector::zeros(0), strict)
}

/// As [`lp_feasible`], with additional equality rows `E x = f` that are never slackened.
pub fn lp_feasible_with_equalities(
    normals: &Matrix,
    offsets: &Vector,
    eq_normals: &Matrix,
    eq_offsets: &Vector,
    strict: bool,
) -> FeasibilityReport {
    let n = normals.ncols();
    if !strict {
        return match maximize(&Vector::zeros(n), normals, offsets, eq_normals, eq_offsets) {
            LpOutcome::Optimal { x, .. } => FeasibilityReport {
                feasible: true,
                slack: None,
                strictly_feasible: None,
                point: Some(x),
            },
            _ => FeasibilityReport {
                feasible: false,
                slack: None,
                strictly_feasible: None,
                point: None,
            },
        };
    }
    let p = normals.nrows();
    let mut a = Matrix::zeros(p, n + 1);
    let mut b = offsets.clone();
    for i in 0..p {
        let row = normals.row(i);
        let norm = row.norm();
        let scale = if norm > 0.0 { 1.0 / norm } else { 1.0 };
        for j in 0..n {
            a[(i, j)] = row[j] * scale;
        }
        a[(i, n)] = 1.0;
        b[i] *= scale;
    }
    let mut e = Matrix::zeros(eq_normals.nrows(), n + 1);
    e.view_mut((0, 0), (eq_normals.nrows(), n)).copy_from(eq_normals);
    let mut c = Vector::zeros(n + 1);
    c[n] = 1.0;
    match maximize(&c, &a, &b, &e, eq_offsets) {
        LpOutcome::Optimal { x, value } => FeasibilityReport {
            feasible: value >= -FEAS_TOL,
            slack: Some(value),
            strictly_feasible: Some(value > STRICT_TOL),
            point: Some(x.rows(0, n).into_owned()),
        },
        LpOutcome::Unbounded => {
            // any feasible point works as a witness
            let witness = match maximize(&Vector::zeros(n + 1), &a, &b, &e, eq_offsets) {
                LpOutcome::Optimal { x, .. } => Some(x.rows(0, n).into_owned()),
                _ => None,
            };
            FeasibilityReport {
                feasible: true,
                slack: Some(f64::INFINITY),
                strictly_feasible: Some(true),
                point: witness,
            }
        }
        LpOutcome::Infeasible => FeasibilityReport {
            feasible: false,
            slack: None,
            strictly_feasible: Some(false),
            point: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matrix, vector};

    #[test]
    fn interval_midpoint_slack() {
        // x ≤ 1, −x ≤ 0
        let rep = lp_feasible(&matrix(&[&[1.0], &[-1.0]]), &vector(&[1.0, 0.0]), true);
        assert!(rep.feasible);
        assert!((rep.slack.unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(rep.strictly_feasible, Some(true));
        assert!((rep.point.unwrap()[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_interval_is_infeasible() {
        // x ≤ 0, −x ≤ −1
        let a = matrix(&[&[1.0], &[-1.0]]);
        let b = vector(&[0.0, -1.0]);
        assert!(!lp_feasible(&a, &b, false).feasible);
        assert!(!lp_feasible(&a, &b, true).feasible);
    }

    #[test]
    fn single_point_is_not_strict() {
        // −x ≤ 0, x ≤ 0
        let rep = lp_feasible(&matrix(&[&[-1.0], &[1.0]]), &vector(&[0.0, 0.0]), true);
        assert!(rep.feasible);
        assert!(rep.slack.unwrap().abs() < 1e-12);
        assert_eq!(rep.strictly_feasible, Some(false));
    }

    #[test]
    fn unbounded_slack_is_reported_infinite() {
        let rep = lp_feasible(&matrix(&[&[1.0, 0.0]]), &vector(&[0.0]), true);
        assert_eq!(rep.slack, Some(f64::INFINITY));
        assert_eq!(rep.strictly_feasible, Some(true));
    }

    #[test]
    fn small_lp_optimum() {
        // max x + y  s.t. x + 2y ≤ 4, 3x + y ≤ 6, x,y ≥ 0  →  (1.6, 1.2), value 2.8
        let a = matrix(&[&[1.0, 2.0], &[3.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]]);
        let b = vector(&[4.0, 6.0, 0.0, 0.0]);
        let out = maximize(&vector(&[1.0, 1.0]), &a, &b, &Matrix::zeros(0, 2), &Vector::zeros(0));
        match out {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 2.8).abs() < 1e-12);
                assert!((x[0] - 1.6).abs() < 1e-12 && (x[1] - 1.2).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_redundancy() {
        // x + y = 1 (twice), x ≥ 0, y ≥ 0, max x
        let e = matrix(&[&[1.0, 1.0], &[2.0, 2.0]]);
        let f = vector(&[1.0, 2.0]);
        let a = matrix(&[&[-1.0, 0.0], &[0.0, -1.0]]);
        let out = maximize(&vector(&[1.0, 0.0]), &a, &vector(&[0.0, 0.0]), &e, &f);
        match out {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 1.0).abs() < 1e-12);
                assert!(x[1].abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbounded_objective() {
        let out = maximize(
            &vector(&[1.0]),
            &matrix(&[&[-1.0]]),
            &vector(&[0.0]),
            &Matrix::zeros(0, 1),
            &Vector::zeros(0),
        );
        assert_eq!(out, LpOutcome::Unbounded);
    }
}
