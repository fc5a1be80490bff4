//! Inertia of hermitian forms by exact congruence.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.zero
    }

    pub fn is_invertible(&self) -> bool {
        self.zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.neg == 0 && self.zero == 0
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.neg == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.zero)
    }
}

/// Signature of `H = H*` by symmetric elimination.
///
/// A nonzero diagonal pivot is eliminated directly. When the remaining
/// diagonal vanishes but some `h_ab ≠ 0`, the block `[[0, h], [h̄, 0]]` is
/// eliminated instead; it is congruent to `diag(1, −1)`.
pub fn hermitian_signature(h: &DenseMatrix) -> Result<Signature> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let mut m = h.clone();
    let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
    loop {
        let n = m.rows();
        if n == 0 {
            break;
        }
        if let Some(k) = (0..n).find(|&k| !m[(k, k)].is_zero()) {
            let d = m[(k, k)].clone();
            if d.re().is_positive() {
                sig.pos += 1;
            } else {
                sig.neg += 1;
            }
            m = schur_complement(&m, &[k]);
            continue;
        }
        let Some((a, b)) = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| !m[(a, b)].is_zero())
        else {
            sig.zero += n;
            break;
        };
        sig.pos += 1;
        sig.neg += 1;
        m = schur_complement(&m, &[a, b]);
    }
    Ok(sig)
}

/// `H₂₂ − H₂₁ H₁₁⁻¹ H₁₂` where `H₁₁` is the principal block on `pivots`.
fn schur_complement(m: &DenseMatrix, pivots: &[usize]) -> DenseMatrix {
    let n = m.rows();
    let rest: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
    let pick = |rows: &[usize], cols: &[usize]| {
        let mut out = DenseMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = m[(r, c)].clone();
            }
        }
        out
    };
    let h11 = pick(pivots, pivots);
    let h12 = pick(pivots, &rest);
    let h21 = pick(&rest, pivots);
    let h22 = pick(&rest, &rest);
    let inv = h11.inverse().expect("pivot block invertible");
    &h22 - &(&(&h21 * &inv) * &h12)
}

/// Signature from a real floating-point spectrum, for cross-checks.
pub fn signature_from_eigenvalues(eigs: &[f64], threshold: f64) -> Signature {
    let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
    for &e in eigs {
        if e > threshold {
            sig.pos += 1;
        } else if e < -threshold {
            sig.neg += 1;
        } else {
            sig.zero += 1;
        }
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    fn sig(p: usize, n: usize, z: usize) -> Signature {
        Signature { pos: p, neg: n, zero: z }
    }

    #[test]
    fn small_examples() {
        let d = DenseMatrix::from_ints(&[&[1, 0], &[0, -1]]);
        assert_eq!(hermitian_signature(&d).unwrap(), sig(1, 1, 0));
        let swap = DenseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(hermitian_signature(&swap).unwrap(), sig(1, 1, 0));
        let h = DenseMatrix::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::i()],
            vec![-Scalar::i(), Scalar::from_int(1)],
        ]);
        assert_eq!(hermitian_signature(&h).unwrap(), sig(2, 0, 0));
        let z = DenseMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(hermitian_signature(&z).unwrap(), sig(1, 0, 1));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DenseMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(hermitian_signature(&m), Err(Error::NotHermitian));
    }
}
