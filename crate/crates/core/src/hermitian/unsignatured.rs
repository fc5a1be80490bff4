//! Search for invertible star-evaluations of different signatures.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::{evaluate, EvalMode, MatrixTuple};
use crate::freealg::MatrixPoly;
use crate::linalg::random::seeded;
use crate::linalg::{hermitian_signature, DenseMatrix, Scalar, Signature};

/// Two points where `f(X, X*)` and `f(Y, Y*)` are invertible with
/// different signatures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnsignaturedWitness {
    pub n: usize,
    pub x: MatrixTuple,
    pub y: MatrixTuple,
    pub sig_x: Signature,
    pub sig_y: Signature,
}

impl UnsignaturedWitness {
    /// Exact re-verification against `f`.
    pub fn verify(&self, f: &MatrixPoly) -> Result<bool> {
        if !f.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        if self.x.mode != EvalMode::Star || self.y.mode != EvalMode::Star {
            return Ok(false);
        }
        let sx = hermitian_signature(&evaluate(f, &self.x)?)?;
        let sy = hermitian_signature(&evaluate(f, &self.y)?)?;
        Ok(sx == self.sig_x && sy == self.sig_y && sx.is_invertible() && sy.is_invertible() && sx != sy)
    }
}

/// Signatures of the invertible values seen at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeSignatures {
    pub n: usize,
    pub samples: usize,
    pub singular: usize,
    pub signatures: Vec<Signature>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum UnsignaturedVerdict {
    Witness { witness: UnsignaturedWitness, samples: usize },
    /// Hermitian monic pencils are unsignatured; the search result is attached.
    KnownByMonicPencil { witness: Option<UnsignaturedWitness>, samples: usize },
    /// No pair was found. This is not a claim that `f` is signatured.
    Unknown { sizes: Vec<SizeSignatures>, samples: usize },
}

impl UnsignaturedVerdict {
    pub fn witness(&self) -> Option<&UnsignaturedWitness> {
        match self {
            UnsignaturedVerdict::Witness { witness, .. } => Some(witness),
            UnsignaturedVerdict::KnownByMonicPencil { witness, .. } => witness.as_ref(),
            UnsignaturedVerdict::Unknown { .. } => None,
        }
    }
}

/// `f = I + Σ A_l·l` with `f = f*`.
pub fn is_hermitian_monic_pencil(f: &MatrixPoly) -> bool {
    f.is_hermitian() && f.degree().unwrap_or(0) <= 1 && f.constant_term().is_identity()
}

enum Search {
    Found(UnsignaturedWitness, usize),
    Exhausted(Vec<SizeSignatures>, usize),
}

fn search(f: &MatrixPoly, budget: &Budget) -> Result<Search> {
    let g = f.alphabet().nvars as usize;
    let mut rng = seeded(budget.seed ^ 0x7573_6967);
    let mut sizes = Vec::new();
    let mut total = 0;
    for n in 1..=budget.n_max {
        let mut first: Option<(MatrixTuple, Signature)> = None;
        let mut seen = BTreeSet::new();
        let mut singular = 0;
        for t in 0..budget.trials {
            total += 1;
            // the origin first, then a cycling scale that reaches both the
            // region near the origin and large values
            let x = if t == 0 {
                MatrixTuple::star(vec![DenseMatrix::zeros(n, n); g])
            } else {
                let scale = Scalar::from_ratio(1, 1 << (t % 8));
                let mut x = MatrixTuple::random(&mut rng, g, n, budget.bound, true, EvalMode::Star);
                x.x = x.x.iter().map(|m| m.scale(&scale)).collect();
                x
            };
            let sig = hermitian_signature(&evaluate(f, &x)?)?;
            if !sig.is_invertible() {
                singular += 1;
                continue;
            }
            seen.insert((sig.pos, sig.neg));
            match &first {
                None => first = Some((x, sig)),
                Some((x0, s0)) if *s0 != sig => {
                    let witness = UnsignaturedWitness { n, x: x0.clone(), y: x, sig_x: *s0, sig_y: sig };
                    debug_assert!(witness.verify(f).unwrap_or(false));
                    return Ok(Search::Found(witness, total));
                }
                Some(_) => {}
            }
        }
        let signatures = seen.into_iter().map(|(pos, neg)| Signature { pos, neg, zero: 0 }).collect();
        sizes.push(SizeSignatures { n, samples: budget.trials, singular, signatures });
    }
    Ok(Search::Exhausted(sizes, total))
}

/// Star-evaluations at sizes `1..=n_max`, `trials` per size: the origin,
/// then random complex points with entries shrunk by `2^-k` for `k` cycling
/// through `0..8`. Values are compared only within one size.
pub fn unsignatured_search(f: &MatrixPoly, budget: &Budget) -> Result<UnsignaturedVerdict> {
    if !f.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let monic = is_hermitian_monic_pencil(f) && f.degree() == Some(1);
    Ok(match search(f, budget)? {
        Search::Found(witness, samples) if monic => UnsignaturedVerdict::KnownByMonicPencil { witness: Some(witness), samples },
        Search::Found(witness, samples) => UnsignaturedVerdict::Witness { witness, samples },
        Search::Exhausted(_, samples) if monic => UnsignaturedVerdict::KnownByMonicPencil { witness: None, samples },
        Search::Exhausted(sizes, samples) => UnsignaturedVerdict::Unknown { sizes, samples },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::FreePoly;

    fn b(n_max: usize, trials: usize) -> Budget {
        Budget { n_max, trials, bound: 3, ..Budget::with_seed(5) }
    }

    #[test]
    fn self_commutator_needs_size_three() {
        let x = FreePoly::x(0);
        let xs = FreePoly::x_star(0);
        let f = MatrixPoly::from_free(&(&(&x * &xs) - &(&xs * &x)));
        let v = unsignatured_search(&f, &b(3, 50)).unwrap();
        let w = v.witness().expect("witness");
        assert_eq!(w.n, 3);
        assert!(w.verify(&f).unwrap());
        let small = unsignatured_search(&f, &b(2, 50)).unwrap();
        assert!(matches!(small, UnsignaturedVerdict::Unknown { .. }));
    }

    #[test]
    fn positive_values_stay_unknown() {
        let x = FreePoly::x(0);
        let f = MatrixPoly::from_free(&(&FreePoly::one(x.alphabet()) + &(&FreePoly::x_star(0) * &x)));
        match unsignatured_search(&f, &b(2, 30)).unwrap() {
            UnsignaturedVerdict::Unknown { sizes, .. } => {
                assert!(sizes.iter().all(|s| s.signatures == vec![Signature { pos: s.n, neg: 0, zero: 0 }]));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn monic_pencil_shortcut() {
        let x = FreePoly::x(0);
        let f = MatrixPoly::from_free(&(&FreePoly::one(x.alphabet()) + &(&x + &FreePoly::x_star(0))));
        let v = unsignatured_search(&f, &b(1, 40)).unwrap();
        assert!(matches!(v, UnsignaturedVerdict::KnownByMonicPencil { witness: Some(_), .. }));
        assert_eq!(unsignatured_search(&MatrixPoly::from_free(&x), &b(1, 1)), Err(Error::NotHermitian));
    }
}
