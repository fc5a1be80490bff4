//! Floating-point views used only to cross-check exact results.

use nalgebra::{Complex, DMatrix};

use super::matrix::DenseMatrix;

pub fn to_complex_matrix(m: &DenseMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_complex64())
}

/// Eigenvalues of a hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    let c = to_complex_matrix(m);
    let mut e: Vec<f64> = c.symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Smallest eigenvalue of a hermitian matrix, `+∞` for the empty matrix.
pub fn min_eigenvalue(m: &DenseMatrix) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(f64::INFINITY)
}

/// Positive semidefinite square root of a hermitian matrix.
pub fn psd_sqrt(m: &DMatrix<Complex<f64>>) -> DMatrix<Complex<f64>> {
    let eig = m.clone().symmetric_eigen();
    let n = m.nrows();
    let d = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(eig.eigenvalues[i].max(0.0).sqrt(), 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}
