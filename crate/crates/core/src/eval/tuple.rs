//! Matrix points, affine lines and evaluation.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{Context, Letter, MatrixPoly, Var, Word};
use crate::linalg::random::{random_matrix, SeededRng};
use crate::linalg::{DenseMatrix, ModMatrix, PrimeField, Scalar, UniPoly, GAUSSIAN_PRIME};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    /// `x_j* ↦ X_j*`.
    Star,
    /// `x_j* ↦ ` an independent matrix.
    Free,
}

/// A point `X ∈ M_n^g`, optionally with values for the starred and slack letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixTuple {
    pub n: usize,
    pub mode: EvalMode,
    pub x: Vec<DenseMatrix>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub x_adj: Vec<DenseMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<DenseMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_adj: Option<DenseMatrix>,
}

impl MatrixTuple {
    pub fn star(x: Vec<DenseMatrix>) -> Self {
        let n = x.first().map_or(1, DenseMatrix::rows);
        MatrixTuple { n, mode: EvalMode::Star, x, x_adj: Vec::new(), y: None, y_adj: None }
    }

    pub fn free(x: Vec<DenseMatrix>, x_adj: Vec<DenseMatrix>) -> Self {
        let n = x.first().or(x_adj.first()).map_or(1, DenseMatrix::rows);
        MatrixTuple { n, mode: EvalMode::Free, x, x_adj, y: None, y_adj: None }
    }

    pub fn with_slack(mut self, y: DenseMatrix, y_adj: Option<DenseMatrix>) -> Self {
        self.y = Some(y);
        self.y_adj = y_adj;
        self
    }

    pub fn arity(&self) -> usize {
        self.x.len()
    }

    /// Componentwise `X ⊕ Y`.
    /// The same point with adjoints stored explicitly.
    pub fn to_free(&self) -> MatrixTuple {
        if self.mode == EvalMode::Free {
            return self.clone();
        }
        MatrixTuple {
            n: self.n,
            mode: EvalMode::Free,
            x: self.x.clone(),
            x_adj: self.x.iter().map(DenseMatrix::adjoint).collect(),
            y: self.y.clone(),
            y_adj: self.y_adj.clone().or_else(|| self.y.as_ref().map(DenseMatrix::adjoint)),
        }
    }

    pub fn direct_sum(&self, o: &MatrixTuple) -> MatrixTuple {
        if self.mode != o.mode {
            return self.to_free().direct_sum(&o.to_free());
        }
        let ds = |a: &[DenseMatrix], b: &[DenseMatrix]| -> Vec<DenseMatrix> {
            a.iter().zip(b).map(|(p, q)| p.direct_sum(q)).collect()
        };
        let opt = |a: &Option<DenseMatrix>, b: &Option<DenseMatrix>| match (a, b) {
            (Some(p), Some(q)) => Some(p.direct_sum(q)),
            _ => None,
        };
        MatrixTuple {
            n: self.n + o.n,
            mode: self.mode,
            x: ds(&self.x, &o.x),
            x_adj: ds(&self.x_adj, &o.x_adj),
            y: opt(&self.y, &o.y),
            y_adj: opt(&self.y_adj, &o.y_adj),
        }
    }

    /// Random integer point with `g` components of size `n`. Starred letters
    /// get independent values in free mode.
    pub fn random(rng: &mut SeededRng, g: usize, n: usize, bound: i64, complex: bool, mode: EvalMode) -> Self {
        let x: Vec<DenseMatrix> = (0..g).map(|_| random_matrix(rng, n, n, bound, complex)).collect();
        match mode {
            EvalMode::Star => MatrixTuple::star(x),
            EvalMode::Free => {
                let adj = (0..g).map(|_| random_matrix(rng, n, n, bound, complex)).collect();
                MatrixTuple { n, ..MatrixTuple::free(x, adj) }
            }
        }
    }

    /// The matrix substituted for a letter.
    pub fn value(&self, l: Letter) -> Result<DenseMatrix> {
        match (l.var, l.star) {
            (Var::X(k), false) => self.x.get(k as usize).cloned().ok_or(Error::ArityMismatch {
                expected: k as usize + 1,
                got: self.x.len(),
            }),
            (Var::X(k), true) => match self.mode {
                EvalMode::Star => Ok(self.value(Letter::x(k))?.adjoint()),
                EvalMode::Free => self
                    .x_adj
                    .get(k as usize)
                    .cloned()
                    .ok_or_else(|| Error::ModeMismatch("free evaluation needs values for starred letters".into())),
            },
            (Var::Y, false) => self
                .y
                .clone()
                .ok_or_else(|| Error::ModeMismatch("no value for the slack letter".into())),
            (Var::Y, true) => match (&self.y_adj, self.mode) {
                (Some(v), _) => Ok(v.clone()),
                (None, EvalMode::Star) => Ok(self.value(Letter::y())?.adjoint()),
                (None, EvalMode::Free) => Err(Error::ModeMismatch("no value for y*".into())),
            },
        }
    }
}

fn check_arity(f: &MatrixPoly, x: &MatrixTuple) -> Result<()> {
    let g = f.alphabet().nvars as usize;
    if x.arity() < g {
        return Err(Error::ArityMismatch { expected: g, got: x.arity() });
    }
    if x.mode == EvalMode::Free && f.alphabet().context >= Context::Involutive && x.x_adj.len() < g {
        let uses_star = f.terms().keys().any(Word::has_star);
        if uses_star {
            return Err(Error::ModeMismatch("free evaluation needs values for starred letters".into()));
        }
    }
    Ok(())
}

/// `f(X) = Σ_w f_w ⊗ w(X)`, rows indexed `a·n + ı`.
pub fn evaluate(f: &MatrixPoly, x: &MatrixTuple) -> Result<DenseMatrix> {
    check_arity(f, x)?;
    let n = x.n;
    let mut letters: HashMap<Letter, DenseMatrix> = HashMap::new();
    let mut memo: HashMap<Word, DenseMatrix> = HashMap::new();
    memo.insert(Word::empty(), DenseMatrix::identity(n));
    let mut out = DenseMatrix::zeros(f.rows() * n, f.cols() * n);
    for (w, coeff) in f.terms() {
        for k in 1..=w.len() {
            let prefix = w.subword(0, k);
            if memo.contains_key(&prefix) {
                continue;
            }
            let l = w.letters()[k - 1];
            if !letters.contains_key(&l) {
                letters.insert(l, x.value(l)?);
            }
            let next = &memo[&w.subword(0, k - 1)] * &letters[&l];
            memo.insert(prefix, next);
        }
        let val = &memo[w];
        for a in 0..f.rows() {
            for b in 0..f.cols() {
                let c = &coeff[(a, b)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        let v = &val[(i, j)];
                        if !v.is_zero() {
                            out[(a * n + i, b * n + j)] += &(c * v);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `f(X)` reduced modulo `p`; `None` when some input does not reduce.
pub fn evaluate_mod(f: &MatrixPoly, x: &MatrixTuple, field: &PrimeField) -> Result<Option<ModMatrix>> {
    check_arity(f, x)?;
    let n = x.n;
    let mut letters: HashMap<Letter, ModMatrix> = HashMap::new();
    let mut memo: HashMap<Word, ModMatrix> = HashMap::new();
    memo.insert(Word::empty(), ModMatrix::identity(*field, n));
    let mut out = ModMatrix::zeros(*field, f.rows() * n, f.cols() * n);
    for (w, coeff) in f.terms() {
        for k in 1..=w.len() {
            let prefix = w.subword(0, k);
            if memo.contains_key(&prefix) {
                continue;
            }
            let l = w.letters()[k - 1];
            if !letters.contains_key(&l) {
                let Some(m) = field.reduce_matrix(&x.value(l)?) else { return Ok(None) };
                letters.insert(l, m);
            }
            let next = memo[&w.subword(0, k - 1)].mul(&letters[&l]);
            memo.insert(prefix, next);
        }
        let Some(c) = field.reduce_matrix(coeff) else { return Ok(None) };
        out = out.add(&c.kron(&memo[w]));
    }
    Ok(Some(out))
}

/// Modular image of `det f(X)`, trying `field` first and the Gaussian prime
/// when `field` has no square root of −1.
pub fn det_mod(f: &MatrixPoly, x: &MatrixTuple, field: &PrimeField) -> Result<Option<u64>> {
    if let Some(m) = evaluate_mod(f, x, field)? {
        return Ok(Some(m.det()));
    }
    let gp = PrimeField::new(GAUSSIAN_PRIME).expect("prime");
    Ok(evaluate_mod(f, x, &gp)?.map(|m| m.det()))
}

/// `det f(X) ≠ 0`, decided exactly. A nonzero modular image settles it cheaply.
pub fn det_nonzero(f: &MatrixPoly, x: &MatrixTuple, field: &PrimeField) -> Result<bool> {
    if let Some(d) = det_mod(f, x, field)? {
        if d != 0 {
            return Ok(true);
        }
    }
    Ok(!evaluate(f, x)?.det().is_zero())
}

/// `X(t) = X₀ + t·X₁`. Starred letters follow `X₀* + t·X₁*`, which agrees
/// with star evaluation for real `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineLine {
    pub base: MatrixTuple,
    pub direction: MatrixTuple,
}

impl AffineLine {
    pub fn new(base: MatrixTuple, direction: MatrixTuple) -> Self {
        AffineLine { base, direction }
    }

    pub fn random(rng: &mut SeededRng, g: usize, n: usize, bound: i64, complex: bool, mode: EvalMode) -> Self {
        let base = MatrixTuple::random(rng, g, n, bound, complex, mode);
        let direction = MatrixTuple::random(rng, g, n, bound, complex, mode);
        AffineLine { base, direction }
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    /// The point at parameter `t`, in free mode so that it is polynomial in `t`.
    pub fn at(&self, t: &Scalar) -> MatrixTuple {
        let comb = |a: &DenseMatrix, b: &DenseMatrix| a + &b.scale(t);
        let g = self.base.arity();
        let x = (0..g).map(|j| comb(&self.base.x[j], &self.direction.x[j])).collect();
        let adj_of = |m: &MatrixTuple, j: usize| match m.mode {
            EvalMode::Star => m.x[j].adjoint(),
            EvalMode::Free => m.x_adj[j].clone(),
        };
        let has_adj = self.base.mode == EvalMode::Star || !self.base.x_adj.is_empty();
        let x_adj = if has_adj {
            (0..g)
                .map(|j| comb(&adj_of(&self.base, j), &adj_of(&self.direction, j)))
                .collect()
        } else {
            Vec::new()
        };
        MatrixTuple::free(x, x_adj)
    }

    /// The point at a real parameter, as a star-mode tuple.
    pub fn at_real(&self, t: &Scalar) -> MatrixTuple {
        debug_assert!(t.is_real());
        let x = (0..self.base.arity())
            .map(|j| &self.base.x[j] + &self.direction.x[j].scale(t))
            .collect();
        MatrixTuple::star(x)
    }
}

/// `det f(X₀ + tX₁)` by exact interpolation at `t = 0, …, D` with
/// `D = δ·n·deg f`.
pub fn det_along_line(f: &MatrixPoly, line: &AffineLine) -> Result<UniPoly> {
    let deg = f.degree().unwrap_or(0);
    let d = f.rows() * line.n() * deg;
    let mut values = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let p = line.at(&Scalar::from_int(k as i64));
        values.push(evaluate(f, &p)?.det());
    }
    Ok(UniPoly::interpolate(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Alphabet, FreePoly};

    fn commutator() -> MatrixPoly {
        let p = &(&FreePoly::x(0) * &FreePoly::x(1)) - &(&FreePoly::x(1) * &FreePoly::x(0));
        MatrixPoly::from_free(&p)
    }

    #[test]
    fn commutator_at_matrix_units() {
        let x = MatrixTuple::star(vec![DenseMatrix::unit(2, 2, 0, 1), DenseMatrix::unit(2, 2, 1, 0)]);
        let v = evaluate(&commutator(), &x).unwrap();
        assert_eq!(v, DenseMatrix::from_ints(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn constant_evaluates_to_kronecker() {
        let c = DenseMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let f = MatrixPoly::constant(c.clone(), Alphabet::analytic(1));
        let x = MatrixTuple::star(vec![DenseMatrix::from_ints(&[&[5, 6, 0], &[1, 1, 1], &[0, 0, 2]])]);
        assert_eq!(evaluate(&f, &x).unwrap(), c.kron(&DenseMatrix::identity(3)));
    }

    #[test]
    fn line_degree_bounds() {
        let f = MatrixPoly::from_free(&FreePoly::x(0));
        let line = AffineLine::new(
            MatrixTuple::star(vec![DenseMatrix::zeros(1, 1)]),
            MatrixTuple::star(vec![DenseMatrix::identity(1)]),
        );
        assert_eq!(det_along_line(&f, &line).unwrap(), UniPoly::t());
        let mut rng = crate::linalg::random::seeded(3);
        let l1 = AffineLine::random(&mut rng, 2, 1, 10, false, EvalMode::Star);
        assert!(det_along_line(&commutator(), &l1).unwrap().is_zero());
        let l2 = AffineLine::random(&mut rng, 2, 2, 10, false, EvalMode::Star);
        let p = det_along_line(&commutator(), &l2).unwrap();
        assert!(p.degree().unwrap_or(0) <= 4);
        for t in [-3, 7, 11, 2, 5] {
            let t = Scalar::from_int(t);
            assert_eq!(p.eval(&t), evaluate(&commutator(), &l2.at(&t)).unwrap().det());
        }
    }

    #[test]
    fn free_mode_requires_adjoint_values() {
        let f = MatrixPoly::from_free(&FreePoly::x_star(0));
        let x = MatrixTuple::free(vec![DenseMatrix::identity(1)], vec![]);
        assert!(matches!(evaluate(&f, &x), Err(Error::ModeMismatch(_))));
    }
}
