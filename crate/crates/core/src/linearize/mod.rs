//! Linearization of matrix polynomials by Higman bordering, reduction to
//! epic pencils and monicization.

mod pencil;

pub use pencil::LinearPencil;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{evaluate, evaluate_mod, sampling_for, MatrixTuple};
use crate::freealg::{Alphabet, FreePoly, MatrixPoly, Word};
use crate::linalg::random::seeded;
use crate::linalg::{DenseMatrix, PrimeField, Scalar, GAUSSIAN_PRIME};

/// A pencil `L` with `f ⊕ I_{e₁}` stably associated to `L ⊕ I_{e₂}` and
/// `det f(X)·αⁿ = det L(X)` for every `X` of size `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearizationResult {
    pub pencil: LinearPencil,
    pub alpha: Scalar,
    pub e1: usize,
    pub e2: usize,
}

/// First word of highest degree, with the entry holding it.
fn split_site(grid: &[Vec<FreePoly>]) -> Option<(usize, usize, Word, Scalar)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in grid.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let deg = p.degree().unwrap_or(0);
            if deg >= 2 && best.is_none_or(|(_, _, d)| deg > d) {
                best = Some((i, j, deg));
            }
        }
    }
    let (i, j, deg) = best?;
    let (w, c) = grid[i][j].terms().iter().find(|(w, _)| w.len() == deg)?;
    Some((i, j, w.clone(), c.clone()))
}

/// Higman linearization: while some entry has degree at least 2, write it as
/// `r + (c·a)·w′` for its leftmost highest-degree word `a·w′` and border
/// with `[[F_r, c·a·e_i], [−w′·e_jᵀ, 1]]`, whose Schur complement is `F`.
pub fn linearize(f: &MatrixPoly) -> Result<LinearizationResult> {
    if !f.is_square() {
        return Err(Error::DimensionMismatch("only square matrix polynomials linearize".into()));
    }
    let alphabet = f.alphabet();
    let mut grid = f.entries();
    let mut e1 = 0;
    while let Some((i, j, w, c)) = split_site(&grid) {
        let m = grid.len();
        let mut rest = w.letters().to_vec();
        let a = rest.remove(0);
        let p = FreePoly::term(c.clone(), Word::letter(a), alphabet);
        let q = FreePoly::term(Scalar::one(), Word::new(rest), alphabet);
        grid[i][j] = &grid[i][j] - &FreePoly::term(c, w, alphabet);
        for (r, row) in grid.iter_mut().enumerate() {
            row.push(if r == i { p.clone() } else { FreePoly::zero(alphabet) });
        }
        let mut last = vec![FreePoly::zero(alphabet); m + 1];
        last[j] = -&q;
        last[m] = FreePoly::one(alphabet);
        grid.push(last);
        e1 += 1;
    }
    let pencil = if grid.is_empty() {
        LinearPencil::new(alphabet, vec![DenseMatrix::zeros(0, 0); alphabet.letters().len() + 1])?
    } else {
        LinearPencil::from_matrix_poly(&MatrixPoly::from_entries(&grid).with_alphabet(alphabet))?
    };
    let out = LinearizationResult { pencil, alpha: Scalar::one(), e1, e2: 0 };
    debug_check_identity(f, &out);
    Ok(out)
}

/// One strip step: `Some` when a common kernel vector was removed.
fn strip_once(l: &LinearPencil) -> Result<Option<(LinearPencil, Scalar)>> {
    let d = l.size();
    if d == 0 {
        return Ok(None);
    }
    let lin = l.linear_coefficients();
    let stacked = if lin.is_empty() { DenseMatrix::zeros(0, d) } else { DenseMatrix::vstack(lin) };
    if let Some(v) = stacked.nullspace().into_iter().next() {
        let w = l.constant().apply(&v);
        if w.iter().all(Scalar::is_zero) {
            return Err(Error::NotFull);
        }
        let q = basis_with_last(&v, false);
        let big_w = basis_with_last(&w, false);
        let p = big_w.inverse().expect("basis change is invertible");
        let scale = &p.det() * &q.det();
        return Ok(Some((l.transform(&p, &q).principal_block(0, d - 1), scale)));
    }
    let row = if lin.is_empty() { DenseMatrix::zeros(d, 0) } else { DenseMatrix::hstack(lin) };
    if let Some(u) = row.left_nullspace().into_iter().next() {
        let z = l.constant().transpose().apply(&u);
        if z.iter().all(Scalar::is_zero) {
            return Err(Error::NotFull);
        }
        let p = basis_with_last(&u, true);
        let big_z = basis_with_last(&z, true);
        let q = big_z.inverse().expect("basis change is invertible");
        let scale = &p.det() * &q.det();
        return Ok(Some((l.transform(&p, &q).principal_block(0, d - 1), scale)));
    }
    Ok(None)
}

/// Invertible matrix whose last column (or last row) is `v`.
fn basis_with_last(v: &[Scalar], as_row: bool) -> DenseMatrix {
    let d = v.len();
    let k = (0..d).rev().find(|&k| !v[k].is_zero()).expect("nonzero vector");
    let mut m = DenseMatrix::identity(d);
    for (r, x) in v.iter().enumerate() {
        m[(r, k)] = x.clone();
    }
    m.swap_cols(k, d - 1);
    if as_row {
        m.transpose()
    } else {
        m
    }
}

/// Strips constant pivots until `(A₁ … A_k)` and `(A₁; …; A_k)` have full
/// rank. After a basis change putting a constant unit vector in the last
/// column (or row), the remaining nonconstant entries of that row (or column)
/// are cleared by unimodular operations and a trailing `1` is removed, which
/// multiplies `α` by `det P·det Q`.
pub fn minimize(r: &LinearizationResult) -> Result<LinearizationResult> {
    let mut pencil = r.pencil.clone();
    let mut alpha = r.alpha.clone();
    let mut e2 = r.e2;
    while let Some((next, scale)) = strip_once(&pencil)? {
        pencil = next;
        alpha = &alpha * &scale;
        e2 += 1;
    }
    debug_assert!(pencil.size() == 0 || pencil.is_epic());
    Ok(LinearizationResult { pencil, alpha, e1: r.e1, e2 })
}

/// `minimize(linearize(f))`.
pub fn epic_linearization(f: &MatrixPoly) -> Result<LinearizationResult> {
    let out = minimize(&linearize(f)?)?;
    debug_check_identity(f, &out);
    Ok(out)
}

/// `A₀⁻¹·L` together with `det A₀`.
pub fn monicize(l: &LinearPencil) -> Result<(LinearPencil, Scalar)> {
    let inv = l.constant().inverse().ok_or(Error::SingularConstantTerm)?;
    let det = l.constant().det();
    let m = l.map(|a| &inv * a);
    Ok((m, det))
}

/// Linearization of `f^X` from one of `f`: ampliates the pencil, so the
/// scale becomes `αⁿ`.
pub fn ampliate_linearization(r: &LinearizationResult, x: &MatrixTuple) -> Result<LinearizationResult> {
    Ok(LinearizationResult {
        pencil: r.pencil.ampliate(x)?,
        alpha: r.alpha.pow(x.n as u32),
        e1: r.e1 * x.n,
        e2: r.e2 * x.n,
    })
}

/// Exact check of `det f(X)·αⁿ = det L(X)` at `points` random tuples of each size.
pub fn verify_determinant_identity(
    f: &MatrixPoly,
    r: &LinearizationResult,
    sizes: &[usize],
    points: usize,
    seed: u64,
) -> Result<bool> {
    let mut rng = seeded(seed);
    let (complex, mode) = sampling_for(f);
    let g = f.alphabet().join(r.pencil.alphabet()).nvars as usize;
    let lf = r.pencil.to_matrix_poly();
    for &n in sizes {
        let scale = r.alpha.pow(n as u32);
        for _ in 0..points {
            let x = MatrixTuple::random(&mut rng, g, n, crate::linalg::random::DEFAULT_BOUND, complex, mode);
            let lhs = &evaluate(f, &x)?.det() * &scale;
            let rhs = evaluate(&lf, &x)?.det();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Modular form of the identity check at sizes 1–3, ten points each.
/// Failing it is an internal error, so it only runs in debug builds.
fn debug_check_identity(f: &MatrixPoly, r: &LinearizationResult) {
    if cfg!(debug_assertions) {
        assert!(
            identity_holds_mod_p(f, r, &[1, 2, 3], 10, 0x6c69_6e),
            "determinant identity fails for {f}"
        );
    }
}

/// Identity check in `F_p` for the Gaussian prime; inputs that do not reduce
/// are skipped.
pub fn identity_holds_mod_p(f: &MatrixPoly, r: &LinearizationResult, sizes: &[usize], points: usize, seed: u64) -> bool {
    let field = PrimeField::new(GAUSSIAN_PRIME).expect("prime");
    let Some(alpha) = field.reduce(&r.alpha) else { return true };
    let mut rng = seeded(seed);
    let (complex, mode) = sampling_for(f);
    let alphabet: Alphabet = f.alphabet().join(r.pencil.alphabet());
    let g = alphabet.nvars as usize;
    let lf = r.pencil.to_matrix_poly();
    for &n in sizes {
        let mut scale = 1;
        for _ in 0..n {
            scale = field.mul(scale, alpha);
        }
        for _ in 0..points {
            let x = MatrixTuple::random(&mut rng, g, n, crate::linalg::random::DEFAULT_BOUND, complex, mode);
            let (Ok(Some(a)), Ok(Some(b))) = (evaluate_mod(f, &x, &field), evaluate_mod(&lf, &x, &field)) else {
                continue;
            };
            if field.mul(a.det(), scale) != b.det() {
                return false;
            }
        }
    }
    true
}
