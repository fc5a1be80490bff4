//! Scalar and matrix polynomials in freely noncommuting letters.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::word::{Alphabet, Context, Letter, Var, Word};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Scalar};

/// `Σ_w c_w w` with no stored zero coefficients. Equality ignores the
/// alphabet descriptor.
#[derive(Clone)]
pub struct FreePoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        FreePoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, alphabet: Alphabet) -> Self {
        FreePoly::term(c, Word::empty(), alphabet)
    }

    pub fn one(alphabet: Alphabet) -> Self {
        FreePoly::constant(Scalar::one(), alphabet)
    }

    /// `c·w`; the alphabet is widened to contain `w`.
    pub fn term(c: Scalar, w: Word, alphabet: Alphabet) -> Self {
        let alphabet = alphabet.join(Alphabet::of_word(&w));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreePoly { alphabet, terms }
    }

    pub fn monomial(w: Word) -> Self {
        let a = Alphabet::of_word(&w);
        FreePoly::term(Scalar::one(), w, a)
    }

    pub fn letter(l: Letter) -> Self {
        FreePoly::monomial(Word::letter(l))
    }

    /// The variable `x_{k+1}`.
    pub fn x(k: u32) -> Self {
        FreePoly::letter(Letter::x(k))
    }

    pub fn x_star(k: u32) -> Self {
        FreePoly::letter(Letter::x_star(k))
    }

    pub fn y() -> Self {
        FreePoly::letter(Letter::y())
    }

    pub fn y_star() -> Self {
        FreePoly::letter(Letter::y_star())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>, alphabet: Alphabet) -> Self {
        let mut p = FreePoly::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn with_alphabet(mut self, a: Alphabet) -> Self {
        self.alphabet = self.alphabet.join(a);
        self
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        self.alphabet = self.alphabet.join(Alphabet::of_word(&w));
        let e = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FreePoly::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)), self.alphabet)
    }

    /// `(Σ c_w w)* = Σ c̄_w w*`.
    pub fn adjoint(&self) -> Self {
        let mut a = self.alphabet;
        if self.terms.keys().any(|w| !w.is_empty()) && a.context == Context::Analytic {
            a.context = Context::Involutive;
        }
        FreePoly::from_terms(self.terms.iter().map(|(w, c)| (w.adjoint(), c.conj())), a)
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms == self.adjoint().terms
    }

    pub fn is_analytic(&self) -> bool {
        self.terms.keys().all(|w| !w.has_star() && !w.has_slack())
    }

    pub fn has_slack(&self) -> bool {
        self.terms.keys().any(Word::has_slack)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FreePoly::one(self.alphabet);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate_scalar(&self, point: &dyn Fn(Letter) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in &self.terms {
            let mut v = c.clone();
            for &l in w.letters() {
                v = &v * &point(l);
            }
            acc += &v;
        }
        acc
    }
}

impl PartialEq for FreePoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl Eq for FreePoly {}

impl std::hash::Hash for FreePoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.terms.hash(h);
    }
}

impl<'a> std::ops::Add<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn add(self, o: &FreePoly) -> FreePoly {
        let mut out = self.clone().with_alphabet(o.alphabet);
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn sub(self, o: &FreePoly) -> FreePoly {
        let mut out = self.clone().with_alphabet(o.alphabet);
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn mul(self, o: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero(self.alphabet.join(o.alphabet));
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

impl std::ops::Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Coefficient in a form the expression parser reads back.
pub(crate) fn fmt_coefficient(c: &Scalar) -> String {
    // reals and bare imaginary integers need no parentheses
    if c.is_real() || (num_traits::Zero::is_zero(c.re()) && !c.to_string().contains('/')) {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn fmt_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a Word, &'a Scalar)>) -> fmt::Result {
    let mut first = true;
    for (w, c) in terms {
        let negative = c.is_real() && c.real_sign() == Some(-1);
        let mag = if negative { -c } else { c.clone() };
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if w.is_empty() {
            write!(f, "{}", fmt_coefficient(&mag))?;
        } else if mag.is_one() {
            write!(f, "{w}")?;
        } else {
            write!(f, "{}*{w}", fmt_coefficient(&mag))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter())
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_w f_w ⊗ w` with `rows × cols` coefficient matrices. Equality ignores
/// the alphabet descriptor.
#[derive(Clone)]
pub struct MatrixPoly {
    rows: usize,
    cols: usize,
    alphabet: Alphabet,
    terms: BTreeMap<Word, DenseMatrix>,
}

impl MatrixPoly {
    pub fn zero(rows: usize, cols: usize, alphabet: Alphabet) -> Self {
        MatrixPoly { rows, cols, alphabet, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize, alphabet: Alphabet) -> Self {
        MatrixPoly::constant(DenseMatrix::identity(n), alphabet)
    }

    pub fn constant(m: DenseMatrix, alphabet: Alphabet) -> Self {
        MatrixPoly::term(Word::empty(), m, alphabet)
    }

    pub fn term(w: Word, m: DenseMatrix, alphabet: Alphabet) -> Self {
        let mut p = MatrixPoly::zero(m.rows(), m.cols(), alphabet);
        p.add_term(w, &m);
        p
    }

    pub fn from_free(f: &FreePoly) -> Self {
        let mut p = MatrixPoly::zero(1, 1, f.alphabet());
        for (w, c) in f.terms() {
            p.add_term(w.clone(), &DenseMatrix::scalar(1, c.clone()));
        }
        p
    }

    /// Assemble from a grid of scalar polynomials.
    pub fn from_entries(entries: &[Vec<FreePoly>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged entries");
        let alphabet = entries
            .iter()
            .flatten()
            .fold(Alphabet::analytic(0), |a, e| a.join(e.alphabet()));
        let mut p = MatrixPoly::zero(rows, cols, alphabet);
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (w, c) in e.terms() {
                    let mut m = DenseMatrix::zeros(rows, cols);
                    m[(i, j)] = c.clone();
                    p.add_term(w.clone(), &m);
                }
            }
        }
        p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length `δ` of a square polynomial.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dimension of a non-square matrix polynomial");
        self.rows
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn with_alphabet(mut self, a: Alphabet) -> Self {
        self.alphabet = self.alphabet.join(a);
        self
    }

    pub fn terms(&self) -> &BTreeMap<Word, DenseMatrix> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> DenseMatrix {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| DenseMatrix::zeros(self.rows, self.cols))
    }

    pub fn add_term(&mut self, w: Word, m: &DenseMatrix) {
        assert_eq!((m.rows(), m.cols()), (self.rows, self.cols), "coefficient shape mismatch");
        if m.is_zero() {
            return;
        }
        self.alphabet = self.alphabet.join(Alphabet::of_word(&w));
        let sum = match self.terms.get(&w) {
            Some(old) => old + m,
            None => m.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> FreePoly {
        FreePoly::from_terms(self.terms.iter().map(|(w, m)| (w.clone(), m[(i, j)].clone())), self.alphabet)
    }

    pub fn entries(&self) -> Vec<Vec<FreePoly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn constant_term(&self) -> DenseMatrix {
        self.coeff(&Word::empty())
    }

    pub fn is_analytic(&self) -> bool {
        self.terms.keys().all(|w| !w.has_star() && !w.has_slack())
    }

    pub fn has_slack(&self) -> bool {
        self.terms.keys().any(Word::has_slack)
    }

    pub fn map_coefficients(&self, f: impl Fn(&DenseMatrix) -> DenseMatrix) -> Self {
        let mut out: Option<MatrixPoly> = None;
        for (w, m) in &self.terms {
            let c = f(m);
            let o = out.get_or_insert_with(|| MatrixPoly::zero(c.rows(), c.cols(), self.alphabet));
            o.add_term(w.clone(), &c);
        }
        out.unwrap_or_else(|| {
            let z = f(&DenseMatrix::zeros(self.rows, self.cols));
            MatrixPoly::zero(z.rows(), z.cols(), self.alphabet)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coefficients(|m| m.scale(c))
    }

    /// `u·f·v` for constant matrices `u`, `v`.
    pub fn sandwich(&self, u: &DenseMatrix, v: &DenseMatrix) -> Self {
        self.map_coefficients(|m| &(u * m) * v)
    }

    /// The involution: `(f*)_w = (f_{w*})*`.
    pub fn adjoint(&self) -> Self {
        let mut a = self.alphabet;
        if self.terms.keys().any(|w| !w.is_empty()) && a.context == Context::Analytic {
            a.context = Context::Involutive;
        }
        let mut out = MatrixPoly::zero(self.cols, self.rows, a);
        for (w, m) in &self.terms {
            out.add_term(w.adjoint(), &m.adjoint());
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.terms == self.adjoint().terms
    }

    pub fn try_mul(&self, o: &MatrixPoly) -> Result<MatrixPoly> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = MatrixPoly::zero(self.rows, o.cols, self.alphabet.join(o.alphabet));
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &MatrixPoly) -> Result<MatrixPoly> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = self.clone().with_alphabet(o.alphabet);
        for (w, m) in &o.terms {
            out.add_term(w.clone(), m);
        }
        Ok(out)
    }

    /// Block-diagonal `f ⊕ g`.
    pub fn direct_sum(&self, o: &MatrixPoly) -> MatrixPoly {
        let mut out = MatrixPoly::zero(self.rows + o.rows, self.cols + o.cols, self.alphabet.join(o.alphabet));
        for (w, m) in &self.terms {
            out.add_term(w.clone(), &m.direct_sum(&DenseMatrix::zeros(o.rows, o.cols)));
        }
        for (w, m) in &o.terms {
            out.add_term(w.clone(), &DenseMatrix::zeros(self.rows, self.cols).direct_sum(m));
        }
        out
    }

    pub fn pow(&self, e: u32) -> MatrixPoly {
        let mut acc = MatrixPoly::identity(self.dim(), self.alphabet);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Rename `x_j* ↦ x_{g+j}` so that starred letters become independent
    /// unstarred ones in a `2g`-letter analytic alphabet.
    pub fn to_involution_free(&self) -> Result<MatrixPoly> {
        if self.has_slack() {
            return Err(Error::AlphabetMismatch("slack letters have no involution-free form".into()));
        }
        let g = self.alphabet.nvars;
        let rename = |w: &Word| {
            Word::new(
                w.letters()
                    .iter()
                    .map(|l| match l.var {
                        Var::X(k) if l.star => Letter::x(g + k),
                        _ => *l,
                    })
                    .collect(),
            )
        };
        let mut out = MatrixPoly::zero(self.rows, self.cols, Alphabet::analytic(2 * g));
        for (w, m) in &self.terms {
            out.add_term(rename(w), m);
        }
        Ok(out)
    }
}

impl PartialEq for MatrixPoly {
    fn eq(&self, o: &Self) -> bool {
        (self.rows, self.cols) == (o.rows, o.cols) && self.terms == o.terms
    }
}

impl Eq for MatrixPoly {}

impl std::hash::Hash for MatrixPoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        (self.rows, self.cols).hash(h);
        self.terms.hash(h);
    }
}

impl<'a> std::ops::Add<&'a MatrixPoly> for &'a MatrixPoly {
    type Output = MatrixPoly;
    fn add(self, o: &MatrixPoly) -> MatrixPoly {
        self.try_add(o).expect("matrix polynomial sum")
    }
}

impl<'a> std::ops::Sub<&'a MatrixPoly> for &'a MatrixPoly {
    type Output = MatrixPoly;
    fn sub(self, o: &MatrixPoly) -> MatrixPoly {
        self.try_add(&-o).expect("matrix polynomial difference")
    }
}

impl<'a> std::ops::Mul<&'a MatrixPoly> for &'a MatrixPoly {
    type Output = MatrixPoly;
    fn mul(self, o: &MatrixPoly) -> MatrixPoly {
        self.try_mul(o).expect("matrix polynomial product")
    }
}

impl std::ops::Neg for &MatrixPoly {
    type Output = MatrixPoly;
    fn neg(self) -> MatrixPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl From<&FreePoly> for MatrixPoly {
    fn from(f: &FreePoly) -> Self {
        MatrixPoly::from_free(f)
    }
}

impl fmt::Display for MatrixPoly {
    /// Canonical text form, readable by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 1 && self.cols == 1 {
            return write!(f, "{}", self.entry(0, 0));
        }
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MatrixPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for FreePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
