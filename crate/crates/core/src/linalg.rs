//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Tolerance on the minimum eigenvalue of the symmetric part for psd tests.
pub const PSD_TOL: f64 = 1e-9;

pub fn vector(values: &[f64]) -> Vector {
    Vector::from_column_slice(values)
}

/// Builds a matrix from row slices. Panics on ragged input.
pub fn matrix(rows: &[&[f64]]) -> Matrix {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
    Matrix::from_fn(nrows, ncols, |i, j| rows[i][j])
}

pub fn matrix_from_rows(rows: &[Vec<f64>], ncols: usize) -> Option<Matrix> {
    if rows.iter().any(|r| r.len() != ncols) {
        return None;
    }
    Some(Matrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

pub fn symmetric_part(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

fn sym_eigenvalues(m: &Matrix) -> Vector {
    if m.nrows() == 0 {
        return Vector::zeros(0);
    }
    SymmetricEigen::new(symmetric_part(m)).eigenvalues
}

/// Smallest eigenvalue of `(M + Mᵀ)/2`; `+∞` for an empty matrix.
pub fn min_sym_eigenvalue(m: &Matrix) -> f64 {
    sym_eigenvalues(m).iter().copied().fold(f64::INFINITY, f64::min)
}

/// Largest eigenvalue of `(M + Mᵀ)/2`; `−∞` for an empty matrix.
pub fn max_sym_eigenvalue(m: &Matrix) -> f64 {
    sym_eigenvalues(m)
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn is_psd(m: &Matrix) -> bool {
    min_sym_eigenvalue(m) >= -PSD_TOL
}

pub fn spectral_norm(m: &Matrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub fn rank(m: &Matrix, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax.max(1.0)).count()
}

/// Orthonormal basis of the null space, one vector per column.
pub fn null_space(m: &Matrix, tol: f64) -> Matrix {
    let n = m.ncols();
    if m.nrows() == 0 {
        return Matrix::identity(n, n);
    }
    // pad to square so that the SVD exposes all right singular vectors
    let rows = m.nrows().max(n);
    let mut padded = Matrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let scale = svd.singular_values.iter().copied().fold(1.0, f64::max);
    let cols: Vec<Vector> = (0..n)
        .filter(|&i| svd.singular_values[i] <= tol * scale)
        .map(|i| vt.row(i).transpose())
        .collect();
    if cols.is_empty() {
        Matrix::zeros(n, 0)
    } else {
        Matrix::from_columns(&cols)
    }
}

/// Minimum-norm least-squares solution of `A x = b`.
pub fn least_norm_solve(a: &Matrix, b: &Vector) -> Vector {
    if a.nrows() == 0 {
        return Vector::zeros(a.ncols());
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = 1e-12 * smax.max(1.0);
    svd.solve(b, eps).expect("SVD factors requested")
}

/// Solves a square system, `None` when numerically singular.
pub fn solve_square(a: &Matrix, b: &Vector) -> Option<Vector> {
    if a.nrows() == 0 {
        return Some(Vector::zeros(0));
    }
    let sv = a.clone().svd(false, false).singular_values;
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if smax == 0.0 || smin <= 1e-12 * smax {
        return None;
    }
    a.clone().lu().solve(b)
}

pub fn check_len(context: &'static str, v: &Vector, n: usize) -> crate::Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(crate::Error::dim(context, n, v.len()))
    }
}
