//! Seeded sampling of scalars and matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::DenseMatrix;
use super::scalar::Scalar;

pub type SeededRng = ChaCha8Rng;

/// Default half-width `B` of the integer sampling box `[−B, B]`.
pub const DEFAULT_BOUND: i64 = 10;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream for a labelled sub-task.
pub fn fork(rng: &mut SeededRng) -> SeededRng {
    ChaCha8Rng::seed_from_u64(rng.gen())
}

pub fn random_scalar(rng: &mut SeededRng, bound: i64, complex: bool) -> Scalar {
    let re = rng.gen_range(-bound..=bound);
    let im = if complex { rng.gen_range(-bound..=bound) } else { 0 };
    Scalar::from_gaussian(re, im)
}

pub fn random_matrix(rng: &mut SeededRng, rows: usize, cols: usize, bound: i64, complex: bool) -> DenseMatrix {
    let data = (0..rows * cols)
        .map(|_| random_scalar(rng, bound, complex))
        .collect();
    DenseMatrix::from_vec(rows, cols, data)
}

pub fn random_hermitian(rng: &mut SeededRng, n: usize, bound: i64) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = random_scalar(rng, bound, false);
        for j in i + 1..n {
            let z = random_scalar(rng, bound, true);
            m[(j, i)] = z.conj();
            m[(i, j)] = z;
        }
    }
    m
}

/// Rejection-sample an invertible matrix.
pub fn random_invertible(rng: &mut SeededRng, n: usize, bound: i64, complex: bool) -> DenseMatrix {
    loop {
        let m = random_matrix(rng, n, n, bound, complex);
        if !m.det().is_zero() {
            return m;
        }
    }
}
