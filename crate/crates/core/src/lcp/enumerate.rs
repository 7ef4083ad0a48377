use super::{LcpProblem, LcpSolution, LcpStatus};
use crate::linalg::{self, Matrix, Vector};
use crate::{Error, Result};

/// Largest size accepted by the `2^m` support enumeration.
pub const MAX_ENUMERATION_SIZE: usize = 12;

/// All basic solutions found by support enumeration.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub solutions: Vec<LcpSolution>,
    /// Support patterns whose principal submatrix was singular.
    pub singular_patterns: usize,
}

impl Enumeration {
    pub fn is_infeasible(&self) -> bool {
        self.solutions.is_empty()
    }
}

/// Brute-force oracle: for every support `α`, solves `M_αα z_α = −q_α`
/// and keeps sign-feasible results. Returns every vertex of `SOL(q, M)`
/// whose support matrix is nonsingular.
pub fn enumerate_lcp(p: &LcpProblem) -> Result<Enumeration> {
    let m = p.size();
    if m > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge {
            size: m,
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    let tol = p.tolerance();
    let mut solutions: Vec<LcpSolution> = Vec::new();
    let mut singular_patterns = 0;
    for mask in 0u32..(1u32 << m) {
        let support: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let k = support.len();
        let mut z = Vector::zeros(m);
        if k > 0 {
            let sub = Matrix::from_fn(k, k, |i, j| p.m()[(support[i], support[j])]);
            let rhs = Vector::from_iterator(k, support.iter().map(|&i| -p.q()[i]));
            match linalg::solve_square(&sub, &rhs) {
                Some(sol) => {
                    for (idx, &i) in support.iter().enumerate() {
                        z[i] = sol[idx];
                    }
                }
                None => {
                    singular_patterns += 1;
                    continue;
                }
            }
        }
        let w = p.w(&z);
        if z.iter().any(|&v| v < -tol) || w.iter().any(|&v| v < -tol) {
            continue;
        }
        // clean the complementary zeros exactly
        for &i in &support {
            if z[i] < 0.0 {
                z[i] = 0.0;
            }
        }
        if solutions.iter().any(|s| (&s.z - &z).norm() <= 1e-9) {
            continue;
        }
        let w = p.w(&z);
        let residual = p.residual(&z);
        solutions.push(LcpSolution {
            z,
            w,
            residual,
            pivots: 0,
            status: LcpStatus::Solved,
            unique: false,
        });
    }
    Ok(Enumeration {
        solutions,
        singular_patterns,
    })
}
