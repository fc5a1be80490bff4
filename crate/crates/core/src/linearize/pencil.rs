//! Linear pencils `A₀ + Σ_l A_l·l` over the letters of an alphabet.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::eval::{evaluate, MatrixTuple};
use crate::freealg::{ampliation_var, Alphabet, Context, Letter, MatrixPoly, Var, Word};
use crate::linalg::DenseMatrix;

/// `A₀ + Σ A_l·l`, one coefficient per letter of the alphabet in canonical
/// order. Involutive pencils carry separate coefficients for `x_j` and `x_j*`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearPencil {
    alphabet: Alphabet,
    coeffs: Vec<DenseMatrix>,
}

impl LinearPencil {
    /// `coeffs[0]` is the constant term, `coeffs[1 + k]` the coefficient of
    /// `alphabet.letters()[k]`.
    pub fn new(alphabet: Alphabet, coeffs: Vec<DenseMatrix>) -> Result<Self> {
        let need = alphabet.letters().len() + 1;
        if coeffs.len() != need {
            return Err(Error::ArityMismatch { expected: need, got: coeffs.len() });
        }
        let d = coeffs[0].rows();
        if coeffs.iter().any(|a| a.rows() != d || a.cols() != d) {
            return Err(Error::DimensionMismatch("pencil coefficients must be square of one size".into()));
        }
        Ok(LinearPencil { alphabet, coeffs })
    }

    /// Analytic pencil `A₀ + Σ_j A_j x_j`.
    pub fn analytic(a0: DenseMatrix, a: Vec<DenseMatrix>) -> Result<Self> {
        let alphabet = Alphabet::analytic(a.len() as u32);
        let mut coeffs = vec![a0];
        coeffs.extend(a);
        Self::new(alphabet, coeffs)
    }

    /// Reads off the coefficients of a square matrix polynomial of degree at most 1.
    pub fn from_matrix_poly(f: &MatrixPoly) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::DimensionMismatch("pencil must be square".into()));
        }
        if f.degree().unwrap_or(0) > 1 {
            return Err(Error::DimensionMismatch("matrix polynomial is not linear".into()));
        }
        let alphabet = f.alphabet();
        let mut coeffs = vec![f.constant_term()];
        for l in alphabet.letters() {
            coeffs.push(f.coeff(&Word::letter(l)));
        }
        Self::new(alphabet, coeffs)
    }

    pub fn size(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn constant(&self) -> &DenseMatrix {
        &self.coeffs[0]
    }

    /// `A₀, A_{l₁}, A_{l₂}, …`.
    pub fn coefficients(&self) -> &[DenseMatrix] {
        &self.coeffs
    }

    /// Coefficients of the letters, without the constant term.
    pub fn linear_coefficients(&self) -> &[DenseMatrix] {
        &self.coeffs[1..]
    }

    pub fn coeff(&self, l: Letter) -> Option<&DenseMatrix> {
        let k = self.alphabet.letters().iter().position(|&m| m == l)?;
        Some(&self.coeffs[k + 1])
    }

    pub fn to_matrix_poly(&self) -> MatrixPoly {
        let mut f = MatrixPoly::constant(self.coeffs[0].clone(), self.alphabet);
        for (l, a) in self.alphabet.letters().into_iter().zip(&self.coeffs[1..]) {
            f.add_term(Word::letter(l), a);
        }
        f
    }

    pub fn evaluate(&self, x: &MatrixTuple) -> Result<DenseMatrix> {
        evaluate(&self.to_matrix_poly(), x)
    }

    /// Rank of `(A₁ … A_k)`.
    pub fn row_block_rank(&self) -> usize {
        if self.coeffs.len() == 1 {
            return 0;
        }
        DenseMatrix::hstack(&self.coeffs[1..]).rank()
    }

    /// Rank of `(A₁; …; A_k)`.
    pub fn column_block_rank(&self) -> usize {
        if self.coeffs.len() == 1 {
            return 0;
        }
        DenseMatrix::vstack(&self.coeffs[1..]).rank()
    }

    pub fn is_epic(&self) -> bool {
        let d = self.size();
        self.row_block_rank() == d && self.column_block_rank() == d
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_identity()
    }

    /// `L* = A₀* + Σ A_l*·l*`. Analytic pencils become involutive.
    pub fn adjoint(&self) -> LinearPencil {
        let alphabet = Alphabet {
            nvars: self.alphabet.nvars,
            context: self.alphabet.context.max(Context::Involutive),
        };
        let mut coeffs = vec![self.coeffs[0].adjoint()];
        for l in alphabet.letters() {
            coeffs.push(match self.coeff(l.adjoint()) {
                Some(a) => a.adjoint(),
                None => DenseMatrix::zeros(self.size(), self.size()),
            });
        }
        LinearPencil { alphabet, coeffs }
    }

    pub fn is_hermitian(&self) -> bool {
        self.alphabet.context >= Context::Involutive && self.adjoint() == *self
    }

    /// `P·L·Q`, coefficientwise.
    pub fn transform(&self, p: &DenseMatrix, q: &DenseMatrix) -> LinearPencil {
        LinearPencil {
            alphabet: self.alphabet,
            coeffs: self.coeffs.iter().map(|a| &(p * a) * q).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&DenseMatrix) -> DenseMatrix) -> LinearPencil {
        LinearPencil {
            alphabet: self.alphabet,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Re-expresses the pencil over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<LinearPencil> {
        let mut coeffs = vec![self.coeffs[0].clone()];
        for l in alphabet.letters() {
            coeffs.push(match self.coeff(l) {
                Some(a) => a.clone(),
                None => DenseMatrix::zeros(self.size(), self.size()),
            });
        }
        for (l, a) in self.alphabet.letters().into_iter().zip(&self.coeffs[1..]) {
            if !alphabet.contains(l) && !a.is_zero() {
                return Err(Error::AlphabetMismatch(format!("letter {l} is not in the target alphabet")));
            }
        }
        Ok(LinearPencil { alphabet, coeffs })
    }

    pub fn direct_sum(&self, o: &LinearPencil) -> LinearPencil {
        let alphabet = self.alphabet.join(o.alphabet);
        let a = self.with_alphabet(alphabet).expect("joined alphabet");
        let b = o.with_alphabet(alphabet).expect("joined alphabet");
        LinearPencil {
            alphabet,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.direct_sum(y)).collect(),
        }
    }

    /// Principal block `[start, start + len)` of every coefficient.
    pub fn principal_block(&self, start: usize, len: usize) -> LinearPencil {
        self.map(|a| a.block(start, start, len, len))
    }

    /// `L(X + Y)` with `Y_j = (y_{jıȷ})` fresh letters, at the pencil level:
    /// constant `A₀⊗I + Σ A_l⊗X_l` and coefficient `A_{x_j}⊗E_{ıȷ}` for
    /// `y_{jıȷ}`. Rows are indexed `a·n + ı`.
    pub fn ampliate(&self, x: &MatrixTuple) -> Result<LinearPencil> {
        if self.alphabet.context == Context::Slack {
            return Err(Error::AlphabetMismatch("ampliation of slack letters".into()));
        }
        let g = self.alphabet.nvars as usize;
        if x.arity() != g {
            return Err(Error::ArityMismatch { expected: g, got: x.arity() });
        }
        let n = x.n;
        let d = self.size();
        let mut constant = self.coeffs[0].kron(&DenseMatrix::identity(n));
        for (l, a) in self.alphabet.letters().into_iter().zip(&self.coeffs[1..]) {
            if !a.is_zero() {
                constant = &constant + &a.kron(&x.value(l)?);
            }
        }
        let alphabet = Alphabet {
            nvars: (g * n * n) as u32,
            context: self.alphabet.context,
        };
        let mut coeffs = vec![constant];
        for l in alphabet.letters() {
            let Var::X(k) = l.var else { unreachable!("no slack letters") };
            let k = k as usize;
            let (j, i, jj) = (k / (n * n), (k / n) % n, k % n);
            let source = if l.star { Letter::x_star(j as u32) } else { Letter::x(j as u32) };
            let a = self.coeff(source).expect("letter of the source alphabet");
            // (Y_j*)_{ıȷ} = y*_{jȷı}
            let e = if l.star { DenseMatrix::unit(n, n, jj, i) } else { DenseMatrix::unit(n, n, i, jj) };
            coeffs.push(if a.is_zero() { DenseMatrix::zeros(d * n, d * n) } else { a.kron(&e) });
        }
        debug_assert_eq!(ampliation_var(0, 0, 0, n), 0);
        LinearPencil::new(alphabet, coeffs)
    }
}

impl fmt::Display for LinearPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_matrix_poly())
    }
}

impl fmt::Debug for LinearPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearPencil({self})")
    }
}

impl Serialize for LinearPencil {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let letters: Vec<String> = std::iter::once("1".to_string())
            .chain(self.alphabet.letters().iter().map(ToString::to_string))
            .collect();
        let mut st = s.serialize_struct("LinearPencil", 6)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("alphabet", &self.alphabet)?;
        st.serialize_field("letters", &letters)?;
        st.serialize_field("coefficients", &self.coeffs)?;
        st.serialize_field("epic", &self.is_epic())?;
        st.serialize_field("monic", &self.is_monic())?;
        st.end()
    }
}
