#![allow(dead_code)]

use rand::Rng;

use freelocus::freealg::{Alphabet, FreePoly, Letter, MatrixPoly, Word};
use freelocus::linalg::random::{random_scalar, SeededRng};
use freelocus::linalg::DenseMatrix;

pub fn random_word(rng: &mut SeededRng, letters: &[Letter], len: usize) -> Word {
    Word::new((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect())
}

/// Random polynomial with up to `terms` terms of degree at most `deg` in the
/// letters of `alphabet`, with small integer or Gaussian coefficients.
pub fn random_poly(rng: &mut SeededRng, alphabet: Alphabet, deg: usize, terms: usize, complex: bool) -> FreePoly {
    let letters = alphabet.letters();
    let mut p = FreePoly::zero(alphabet);
    for _ in 0..rng.gen_range(1..=terms) {
        let len = if letters.is_empty() { 0 } else { rng.gen_range(0..=deg) };
        let w = random_word(rng, &letters, len);
        p.add_term(w, &random_scalar(rng, 4, complex));
    }
    p
}

/// Nonconstant random analytic polynomial.
pub fn random_analytic(rng: &mut SeededRng, g: u32, deg: usize, terms: usize) -> FreePoly {
    loop {
        let p = random_poly(rng, Alphabet::analytic(g), deg, terms, false);
        if !p.is_constant() {
            return p;
        }
    }
}

pub fn matrix(p: &FreePoly) -> MatrixPoly {
    MatrixPoly::from_free(p)
}

/// `rank [V | v] = rank V`.
pub fn in_span(basis: &[Vec<freelocus::linalg::Scalar>], v: &[freelocus::linalg::Scalar]) -> bool {
    let cols = |vs: &[Vec<freelocus::linalg::Scalar>]| {
        let m: Vec<DenseMatrix> = vs.iter().map(|c| DenseMatrix::column_vector(c.clone())).collect();
        DenseMatrix::hstack(&m).rank()
    };
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    cols(basis) == cols(&all)
}
