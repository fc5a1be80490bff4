//! Hereditary quadratic polynomials `α + x⃗*v + v*x⃗ + x⃗*Hx⃗`.

use serde::Serialize;

use super::poly::FreePoly;
use super::word::{Alphabet, Letter, Var, Word};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    pub alpha: Scalar,
    pub v: Vec<Scalar>,
    pub h: DenseMatrix,
}

impl QuadraticForm {
    pub fn nvars(&self) -> usize {
        self.v.len()
    }

    pub fn to_poly(&self) -> FreePoly {
        let g = self.v.len() as u32;
        let mut p = FreePoly::constant(self.alpha.clone(), Alphabet::involutive(g));
        for (j, vj) in self.v.iter().enumerate() {
            let j = j as u32;
            p.add_term(Word::letter(Letter::x_star(j)), vj);
            p.add_term(Word::letter(Letter::x(j)), &vj.conj());
        }
        for i in 0..self.v.len() {
            for j in 0..self.v.len() {
                let w = Word::new(vec![Letter::x_star(i as u32), Letter::x(j as u32)]);
                p.add_term(w, &self.h[(i, j)]);
            }
        }
        p
    }
}

/// Read off `(α, v, H)` from a hermitian hereditary quadratic polynomial.
pub fn quadratic_parts(f: &FreePoly) -> Result<QuadraticForm> {
    let g = f.alphabet().nvars as usize;
    let mut alpha = Scalar::zero();
    let mut v = vec![Scalar::zero(); g];
    let mut v_conj = vec![Scalar::zero(); g];
    let mut h = DenseMatrix::zeros(g, g);
    for (w, c) in f.terms() {
        let idx = |l: &Letter| match l.var {
            Var::X(k) => Some(k as usize),
            Var::Y => None,
        };
        let offending = || Error::NotHereditaryQuadratic(w.to_string());
        match w.letters() {
            [] => alpha = c.clone(),
            [l] => {
                let k = idx(l).ok_or_else(offending)?;
                if l.star {
                    v[k] = c.clone();
                } else {
                    v_conj[k] = c.clone();
                }
            }
            [a, b] if a.star && !b.star => {
                let i = idx(a).ok_or_else(offending)?;
                let j = idx(b).ok_or_else(offending)?;
                h[(i, j)] = c.clone();
            }
            _ => return Err(offending()),
        }
    }
    let consistent = alpha.is_real()
        && h.is_hermitian()
        && v.iter().zip(&v_conj).all(|(a, b)| a.conj() == *b);
    if !consistent {
        return Err(Error::NotHermitian);
    }
    Ok(QuadraticForm { alpha, v, h })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = Alphabet::involutive(1);
        let f = &FreePoly::one(a) - &(&FreePoly::x_star(0) * &FreePoly::x(0));
        let q = quadratic_parts(&f).unwrap();
        assert_eq!(q.alpha, Scalar::one());
        assert_eq!(q.h, DenseMatrix::from_ints(&[&[-1]]));
        assert_eq!(q.to_poly(), f);

        let g = &(&FreePoly::x_star(0) * &FreePoly::x(1)) + &(&FreePoly::x_star(1) * &FreePoly::x(0));
        let q = quadratic_parts(&g).unwrap();
        assert_eq!(q.h, DenseMatrix::from_ints(&[&[0, 1], &[1, 0]]));

        let bad = &FreePoly::x(0) * &FreePoly::x_star(0);
        assert_eq!(quadratic_parts(&bad), Err(Error::NotHereditaryQuadratic("x1*x1'".into())));
        assert_eq!(quadratic_parts(&FreePoly::x(0)), Err(Error::NotHermitian));
    }
}
