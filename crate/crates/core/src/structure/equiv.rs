//! Equivalence `M = P·L·Q` of pencils by constant invertible matrices.

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::random::seeded;
use crate::linalg::{nullspace_filtered, DenseMatrix, Scalar};
use crate::linearize::LinearPencil;

/// `M ⊕ I_{e₂} = P·(L ⊕ I_{e₁})·Q` with `α = det P·det Q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceWitness {
    pub p: DenseMatrix,
    pub q: DenseMatrix,
    pub alpha: Scalar,
    pub e1: usize,
    pub e2: usize,
}

impl EquivalenceWitness {
    pub fn identity(d: usize) -> Self {
        EquivalenceWitness {
            p: DenseMatrix::identity(d),
            q: DenseMatrix::identity(d),
            alpha: Scalar::one(),
            e1: 0,
            e2: 0,
        }
    }
}

/// Both pencils over their joint alphabet.
fn align(l: &LinearPencil, m: &LinearPencil) -> (LinearPencil, LinearPencil) {
    let a = l.alphabet().join(m.alphabet());
    (l.with_alphabet(a).expect("joined alphabet"), m.with_alphabet(a).expect("joined alphabet"))
}

/// Linear system `P′·B_j = A_j·Q` in the entries of `(P′, Q)`; with
/// `monic_shortcut` the constant terms force `P′ = Q` and only `Q` remains.
fn system(a: &[DenseMatrix], b: &[DenseMatrix], d: usize, monic_shortcut: bool) -> DenseMatrix {
    let unknowns = if monic_shortcut { d * d } else { 2 * d * d };
    let q0 = if monic_shortcut { 0 } else { d * d };
    let mut rows = Vec::new();
    let skip = usize::from(monic_shortcut);
    for (aj, bj) in a.iter().zip(b).skip(skip) {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![Scalar::zero(); unknowns];
                for c in 0..d {
                    // (P′·B)_{ij} = Σ_c P′_{ic} B_{cj},  (A·Q)_{ij} = Σ_c A_{ic} Q_{cj}
                    row[i * d + c] += &bj[(c, j)];
                    row[q0 + c * d + j] -= &aj[(i, c)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        DenseMatrix::zeros(0, unknowns)
    } else {
        DenseMatrix::from_rows(rows)
    }
}

fn solution_space(l: &LinearPencil, m: &LinearPencil, monic_shortcut: bool) -> Vec<Vec<Scalar>> {
    nullspace_filtered(&system(l.coefficients(), m.coefficients(), l.size(), monic_shortcut))
}

/// Dimension of `{(P′, Q) : P′·A_j = A_j·Q for all j}`.
pub fn stabilizer_dim(l: &LinearPencil) -> usize {
    solution_space(l, l, false).len()
}

/// Searches for `P, Q` invertible with `M = P·L·Q`, sampling 20 random
/// elements of the solution space of `P′·M_j = L_j·Q` for one with `P′`
/// and `Q` invertible; then `P = P′⁻¹`.
pub fn pencil_equiv(l: &LinearPencil, m: &LinearPencil, seed: u64) -> Result<Option<EquivalenceWitness>> {
    if l.size() != m.size() {
        return Ok(None);
    }
    let d = l.size();
    if d == 0 {
        return Ok(Some(EquivalenceWitness::identity(0)));
    }
    let (l, m) = align(l, m);
    let monic = l.is_monic() && m.is_monic();
    let basis = solution_space(&l, &m, monic);
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = seeded(seed ^ 0x6571_7576);
    for attempt in 0..20 {
        let mut v = vec![Scalar::zero(); basis[0].len()];
        for (k, b) in basis.iter().enumerate() {
            let c = if attempt == 0 { Scalar::from_int(i64::from(k == 0)) } else { Scalar::from_int(rng.gen_range(-10..=10)) };
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        let p_prime = DenseMatrix::from_vec(d, d, v[..d * d].to_vec());
        let q = if monic { p_prime.clone() } else { DenseMatrix::from_vec(d, d, v[d * d..].to_vec()) };
        let Some(p) = p_prime.inverse() else { continue };
        if !q.is_invertible() {
            continue;
        }
        let w = EquivalenceWitness { alpha: &p.det() * &q.det(), p, q, e1: 0, e2: 0 };
        debug_assert!(verify_equivalence(&l, &m, &w));
        return Ok(Some(w));
    }
    Ok(None)
}

/// Exact check of `M_j = P·L_j·Q` for every coefficient.
pub fn verify_equivalence(l: &LinearPencil, m: &LinearPencil, w: &EquivalenceWitness) -> bool {
    if l.size() != m.size() || w.p.rows() != l.size() || w.q.rows() != l.size() {
        return false;
    }
    let (l, m) = align(l, m);
    w.p.is_invertible()
        && w.q.is_invertible()
        && l.coefficients().iter().zip(m.coefficients()).all(|(a, b)| &(&w.p * a) * &w.q == *b)
}
