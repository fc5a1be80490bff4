//! Point-centered ampliation `f^X`.
//!
//! Around `X ∈ M_n^g` every letter `x_j` is replaced by the `n × n` matrix
//! `X_j + (y_{jıȷ})_{ıȷ}` of fresh letters. The fresh letter `y_{jıȷ}` is the
//! variable with 0-based index `j·n² + ı·n + ȷ`, so the result lives in
//! `g·n²` variables. Output rows are indexed `a·n + ı` with `a < δ` the row
//! of `f`; [`canonical_shuffle`] converts to the `ı·δ + a` layout in which
//! the coefficient of `y_{jıȷ}` of an ampliated pencil is `E_{ıȷ} ⊗ A_j`.

use std::collections::HashMap;

use super::poly::{FreePoly, MatrixPoly};
use super::word::{Alphabet, Context, Letter, Var, Word};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Scalar};

/// Index of `y_{jıȷ}` among the ampliation variables at size `n`.
pub fn ampliation_var(j: usize, i: usize, jj: usize, n: usize) -> u32 {
    (j * n * n + i * n + jj) as u32
}

type Grid = Vec<Vec<FreePoly>>;

fn grid_mul(a: &Grid, b: &Grid, alphabet: Alphabet) -> Grid {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = FreePoly::zero(alphabet);
                    for k in 0..n {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `f` evaluated at `X_j + (y_{jıȷ})_{ıȷ}`.
pub fn ampliate(f: &MatrixPoly, x: &[DenseMatrix]) -> Result<MatrixPoly> {
    let g = f.alphabet().nvars as usize;
    if x.len() != g {
        return Err(Error::ArityMismatch { expected: g, got: x.len() });
    }
    if f.has_slack() {
        return Err(Error::AlphabetMismatch("ampliation of slack letters".into()));
    }
    let n = x.first().map_or(1, DenseMatrix::rows);
    if x.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("ampliation point must be square of one size".into()));
    }
    let context = if f.alphabet().context >= Context::Involutive {
        Context::Involutive
    } else {
        Context::Analytic
    };
    let alphabet = Alphabet { nvars: (g * n * n) as u32, context };
    let fresh = |j: usize, i: usize, jj: usize, star: bool| {
        let k = ampliation_var(j, i, jj, n);
        FreePoly::letter(Letter { var: Var::X(k), star }).with_alphabet(alphabet)
    };
    let substitute = |l: Letter| -> Grid {
        let Var::X(j) = l.var else { unreachable!("slack rejected above") };
        let j = j as usize;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|jj| {
                        if l.star {
                            let c = FreePoly::constant(x[j][(jj, i)].conj(), alphabet);
                            &c + &fresh(j, jj, i, true)
                        } else {
                            let c = FreePoly::constant(x[j][(i, jj)].clone(), alphabet);
                            &c + &fresh(j, i, jj, false)
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let identity: Grid = (0..n)
        .map(|i| {
            (0..n)
                .map(|jj| {
                    let c = if i == jj { Scalar::one() } else { Scalar::zero() };
                    FreePoly::constant(c, alphabet)
                })
                .collect()
        })
        .collect();
    let mut memo: HashMap<Word, Grid> = HashMap::new();
    memo.insert(Word::empty(), identity);
    let mut letter_grids: HashMap<Letter, Grid> = HashMap::new();
    let (rows, cols) = (f.rows(), f.cols());
    let mut out: Grid = vec![vec![FreePoly::zero(alphabet); cols * n]; rows * n];
    for (w, coeff) in f.terms() {
        for k in 1..=w.len() {
            let prefix = w.subword(0, k);
            if memo.contains_key(&prefix) {
                continue;
            }
            let l = w.letters()[k - 1];
            let lg = letter_grids.entry(l).or_insert_with(|| substitute(l)).clone();
            let prev = &memo[&w.subword(0, k - 1)];
            let next = grid_mul(prev, &lg, alphabet);
            memo.insert(prefix, next);
        }
        let val = &memo[w];
        for a in 0..rows {
            for b in 0..cols {
                let c = &coeff[(a, b)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for jj in 0..n {
                        if val[i][jj].is_zero() {
                            continue;
                        }
                        let cell = &mut out[a * n + i][b * n + jj];
                        *cell = &*cell + &val[i][jj].scale(c);
                    }
                }
            }
        }
    }
    let mut p = MatrixPoly::from_entries(&out).with_alphabet(alphabet);
    if p.rows() != rows * n {
        p = MatrixPoly::zero(rows * n, cols * n, alphabet);
    }
    Ok(p)
}

/// Permutation `K` with `K (A ⊗ B) Kᵀ = B ⊗ A` for `A` of size `δ`, `B` of size `n`.
pub fn canonical_shuffle(delta: usize, n: usize) -> DenseMatrix {
    let mut k = DenseMatrix::zeros(delta * n, delta * n);
    for a in 0..delta {
        for i in 0..n {
            k[(i * delta + a, a * n + i)] = Scalar::one();
        }
    }
    k
}
