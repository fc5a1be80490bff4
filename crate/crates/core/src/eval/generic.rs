//! Expanded determinants of evaluations at generic matrices.
//!
//! At size `n` the letter `x_j` becomes the generic matrix `(ω_{jıȷ})` and,
//! independently, `x_j*` becomes `(υ_{jıȷ})`. Coordinate indices are
//! `(j + s·g)·n² + ı·n + ȷ` with `s = 1` for the starred family.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{Letter, MatrixPoly, Var, Word};
use crate::linalg::Scalar;

/// Sparse commutative polynomial; a monomial is a sorted list of
/// `(variable, exponent)` pairs.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<Vec<(u32, u32)>, Scalar>,
}

fn mono_mul(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(Vec::new(), &c);
        p
    }

    pub fn var(v: u32) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(vec![(v, 1)], &Scalar::one());
        p
    }

    pub fn add_term(&mut self, m: Vec<(u32, u32)>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<(u32, u32)>, Scalar> {
        &self.terms
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = CommPoly::zero();
        for (m, a) in &self.terms {
            p.add_term(m.clone(), &(a * c));
        }
        p
    }

    pub fn eval(&self, point: &dyn Fn(u32) -> Scalar) -> Scalar {
        let mut cache: HashMap<u32, Scalar> = HashMap::new();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(x, e) in m {
                let b = cache.entry(x).or_insert_with(|| point(x));
                v = &v * &b.pow(e);
            }
            acc += &v;
        }
        acc
    }

    /// `∂/∂v`.
    pub fn partial(&self, v: u32) -> Self {
        let mut p = CommPoly::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|&(x, _)| x == v) {
                let e = m[pos].1;
                let mut nm = m.clone();
                if e == 1 {
                    nm.remove(pos);
                } else {
                    nm[pos].1 = e - 1;
                }
                p.add_term(nm, &(c * &Scalar::from_int(e as i64)));
            }
        }
        p
    }

    /// Conjugate every coefficient.
    pub fn conj(&self) -> Self {
        let mut p = CommPoly::zero();
        for (m, c) in &self.terms {
            p.add_term(m.clone(), &c.conj());
        }
        p
    }

    /// Rename variables.
    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Self {
        let mut p = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut nm: Vec<(u32, u32)> = m.iter().map(|&(x, e)| (f(x), e)).collect();
            nm.sort();
            p.add_term(nm, c);
        }
        p
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|p| p.1).sum()).max()
    }
}

impl<'a> std::ops::Add<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn add(self, o: &CommPoly) -> CommPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c);
        }
        p
    }
}

impl<'a> std::ops::Sub<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn sub(self, o: &CommPoly) -> CommPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), &-c);
        }
        p
    }
}

impl<'a> std::ops::Mul<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn mul(self, o: &CommPoly) -> CommPoly {
        let mut p = CommPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                p.add_term(mono_mul(a, b), &(c * d));
            }
        }
        p
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in m {
                write!(f, "*w{v}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `det f(𝔛ⁿ)` as an explicit polynomial in the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDet {
    pub n: usize,
    /// Number of `x` letters; coordinates of starred letters start at `g·n²`.
    pub g: usize,
    pub poly: CommPoly,
}

impl GenericDet {
    pub fn coordinate(&self, j: usize, star: bool, i: usize, jj: usize) -> u32 {
        generic_coordinate(self.g, self.n, j, star, i, jj)
    }
}

pub fn generic_coordinate(g: usize, n: usize, j: usize, star: bool, i: usize, jj: usize) -> u32 {
    ((j + usize::from(star) * g) * n * n + i * n + jj) as u32
}

const MAX_SIDE: usize = 8;
const MAX_TERMS: usize = 200_000;

type Grid = Vec<Vec<CommPoly>>;

fn grid_mul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = CommPoly::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Evaluate `f` at generic matrices of size `n ∈ {1, 2}` and expand the determinant.
pub fn symbolic_generic_det(f: &MatrixPoly, n: usize) -> Result<GenericDet> {
    if !(1..=2).contains(&n) {
        return Err(Error::TooLarge(format!("generic size {n} (only 1 and 2 are supported)")));
    }
    if !f.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix polynomial".into()));
    }
    if f.has_slack() {
        return Err(Error::AlphabetMismatch("slack letters have no generic matrix".into()));
    }
    let side = f.rows() * n;
    if side > MAX_SIDE {
        return Err(Error::TooLarge(format!("side length {side} exceeds {MAX_SIDE}")));
    }
    let g = f.alphabet().nvars as usize;
    let letter_grid = |l: Letter| -> Grid {
        let Var::X(j) = l.var else { unreachable!() };
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|jj| CommPoly::var(generic_coordinate(g, n, j as usize, l.star, i, jj)))
                    .collect()
            })
            .collect()
    };
    let identity: Grid = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CommPoly::constant(Scalar::one()) } else { CommPoly::zero() })
                .collect()
        })
        .collect();
    let mut memo: HashMap<Word, Grid> = HashMap::new();
    memo.insert(Word::empty(), identity);
    let mut entries: Grid = vec![vec![CommPoly::zero(); side]; side];
    for (w, coeff) in f.terms() {
        for k in 1..=w.len() {
            let prefix = w.subword(0, k);
            if memo.contains_key(&prefix) {
                continue;
            }
            let next = grid_mul(&memo[&w.subword(0, k - 1)], &letter_grid(w.letters()[k - 1]));
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
                    for jj in 0..n {
                        let cell = &mut entries[a * n + i][b * n + jj];
                        *cell = &*cell + &val[i][jj].scale(c);
                    }
                }
            }
        }
    }
    // Laplace expansion along rows, memoized on the set of used columns.
    let mut layer: HashMap<u32, CommPoly> = HashMap::new();
    layer.insert(0, CommPoly::constant(Scalar::one()));
    for (r, row) in entries.iter().enumerate() {
        let mut next: HashMap<u32, CommPoly> = HashMap::new();
        for (mask, acc) in &layer {
            for (c, e) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || e.is_zero() {
                    continue;
                }
                // sign of placing column c after the columns already used
                let above = (mask >> (c + 1)).count_ones();
                let term = &(acc * e);
                let term = if above % 2 == 1 { term.scale(&Scalar::from_int(-1)) } else { term.clone() };
                let slot = next.entry(mask | (1 << c)).or_default();
                *slot = &*slot + &term;
                if slot.term_count() > MAX_TERMS {
                    return Err(Error::TooLarge(format!("more than {MAX_TERMS} terms at row {r}")));
                }
            }
        }
        layer = next;
    }
    let full = (1u32 << side) - 1;
    let poly = layer.remove(&full).unwrap_or_default();
    Ok(GenericDet { n, g, poly })
}
