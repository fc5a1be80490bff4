//! Randomized fullness, unit and degree tests.

use serde::Serialize;

use super::tuple::{det_along_line, det_mod, det_nonzero, evaluate, AffineLine, EvalMode, MatrixTuple};
use crate::budget::Budget;
use crate::error::Result;
use crate::freealg::{Context, MatrixPoly};
use crate::linalg::random::seeded;
use crate::linalg::{PrimeField, Scalar, UniPoly};

/// How to sample points for `f`: complex entries and independent adjoints
/// whenever starred letters are allowed.
pub fn sampling_for(f: &MatrixPoly) -> (bool, EvalMode) {
    if f.alphabet().context >= Context::Involutive {
        (true, EvalMode::Free)
    } else {
        (false, EvalMode::Star)
    }
}

/// Schwartz–Zippel bound on missing a nonzero `det f(𝔛ⁿ)` of degree at most
/// `δ·n·deg f` in `trials` independent samples, minimized over the sizes.
pub fn failure_bound(f: &MatrixPoly, sizes: &[usize], budget: &Budget) -> f64 {
    let deg = f.degree().unwrap_or(0).max(1);
    sizes
        .iter()
        .map(|&n| {
            let d = (f.rows() * n * deg) as f64;
            (d / budget.sample_space()).min(1.0).powi(budget.trials as i32)
        })
        .fold(1.0, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FullnessVerdict {
    Full { witness: MatrixTuple },
    ProbablyNotFull { sizes: Vec<usize>, trials: usize, failure_bound: f64, note: String },
}

impl FullnessVerdict {
    pub fn is_full(&self) -> bool {
        matches!(self, FullnessVerdict::Full { .. })
    }
}

/// Search for `X` with `det f(X) ≠ 0` over sizes `1..=n_max`.
pub fn fullness_test(f: &MatrixPoly, budget: &Budget) -> Result<FullnessVerdict> {
    let field = PrimeField::new(budget.prime).expect("configured modulus must be prime");
    let mut rng = seeded(budget.seed);
    let (complex, mode) = sampling_for(f);
    let g = f.alphabet().nvars as usize;
    let sizes: Vec<usize> = (1..=budget.n_max).collect();
    if f.is_square() && !f.is_zero() {
        for &n in &sizes {
            for _ in 0..budget.trials {
                let x = MatrixTuple::random(&mut rng, g, n, budget.bound, complex, mode);
                if det_nonzero(f, &x, &field)? {
                    return Ok(FullnessVerdict::Full { witness: x });
                }
            }
        }
    }
    let note = if f.is_square() {
        "no nonsingular evaluation found; the bound applies at sizes where det f is not identically zero".to_string()
    } else {
        "non-square matrices are never full".to_string()
    };
    Ok(FullnessVerdict::ProbablyNotFull {
        failure_bound: if f.is_square() { failure_bound(f, &sizes, budget) } else { 0.0 },
        sizes,
        trials: budget.trials,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotUnitWitness {
    /// `det f` restricted to the line has positive degree.
    Line { line: AffineLine, det: UniPoly },
    /// `det f(X) = 0`.
    Point { point: MatrixTuple },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum UnitVerdict {
    ProbablyUnit { sizes: Vec<usize>, trials: usize },
    NotUnit { witness: NotUnitWitness },
}

impl UnitVerdict {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitVerdict::ProbablyUnit { .. })
    }
}

/// Look for a line on which `det f` is nonconstant, or a singular point.
pub fn unit_test(f: &MatrixPoly, budget: &Budget) -> Result<UnitVerdict> {
    let field = PrimeField::new(budget.prime).expect("configured modulus must be prime");
    let mut rng = seeded(budget.seed ^ 0x756e_6974);
    let (complex, mode) = sampling_for(f);
    let g = f.alphabet().nvars as usize;
    let deg = f.degree().unwrap_or(0);
    for n in 1..=budget.n_max {
        let d = f.rows() * n * deg;
        for _ in 0..budget.trials {
            let line = AffineLine::random(&mut rng, g, n, budget.bound, complex, mode);
            // cheap modular screen: a constant nonzero residue sequence is skipped
            let mut residues = Vec::with_capacity(d + 1);
            for k in 0..=d {
                residues.push(det_mod(f, &line.at(&Scalar::from_int(k as i64)), &field)?);
            }
            if residues.iter().all(|r| *r == residues[0] && r.is_some_and(|v| v != 0)) {
                continue;
            }
            let p = det_along_line(f, &line)?;
            if p.is_zero() {
                let point = line.at(&Scalar::zero());
                return Ok(UnitVerdict::NotUnit { witness: NotUnitWitness::Point { point } });
            }
            if p.degree().unwrap_or(0) >= 1 {
                return Ok(UnitVerdict::NotUnit { witness: NotUnitWitness::Line { line, det: p } });
            }
        }
    }
    Ok(UnitVerdict::ProbablyUnit { sizes: (1..=budget.n_max).collect(), trials: budget.trials })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocusDegree {
    /// `(n, d_n)` with `d_n` the largest sampled line degree at size `n`.
    pub samples: Vec<(usize, usize)>,
    /// `d` once `d_n = d·n` holds on the last two sampled sizes.
    pub slope: Option<usize>,
}

pub fn estimate_locus_degree(f: &MatrixPoly, sizes: &[usize], budget: &Budget) -> Result<LocusDegree> {
    let mut rng = seeded(budget.seed ^ 0x6465_6772);
    let (complex, mode) = sampling_for(f);
    let g = f.alphabet().nvars as usize;
    let mut samples = Vec::new();
    for &n in sizes {
        let mut best = 0;
        for _ in 0..budget.trials {
            let line = AffineLine::random(&mut rng, g, n, budget.bound, complex, mode);
            let p = det_along_line(f, &line)?;
            best = best.max(p.degree().unwrap_or(0));
        }
        samples.push((n, best));
    }
    let slope = match samples.as_slice() {
        [.., (n1, d1), (n2, d2)] if d1 % n1 == 0 && d2 % n2 == 0 && d1 / n1 == d2 / n2 => Some(d2 / n2),
        _ => None,
    };
    Ok(LocusDegree { samples, slope })
}

/// Random point at one of the sizes `1..=n_max` with `det f(X) ≠ 0` for
/// every `f` in the list.
pub fn common_regular_point(fs: &[&MatrixPoly], g: usize, budget: &Budget, salt: u64) -> Result<Option<MatrixTuple>> {
    let field = PrimeField::new(budget.prime).expect("configured modulus must be prime");
    let mut rng = seeded(budget.seed ^ salt);
    let complex = fs.iter().any(|f| sampling_for(f).0);
    let mode = if complex { EvalMode::Free } else { EvalMode::Star };
    for n in 1..=budget.n_max {
        for _ in 0..budget.trials {
            let x = MatrixTuple::random(&mut rng, g, n, budget.bound, complex, mode);
            let mut ok = true;
            for f in fs {
                if !det_nonzero(f, &x, &field)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// Exact check that `det f(X) ≠ 0`.
pub fn verify_regular(f: &MatrixPoly, x: &MatrixTuple) -> Result<bool> {
    Ok(!evaluate(f, x)?.det().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Alphabet, FreePoly};
    use crate::linalg::DenseMatrix;

    fn poly(p: FreePoly) -> MatrixPoly {
        MatrixPoly::from_free(&p)
    }

    #[test]
    fn fullness_examples() {
        let b = Budget::with_seed(1);
        let comm = poly(&(&FreePoly::x(0) * &FreePoly::x(1)) - &(&FreePoly::x(1) * &FreePoly::x(0)));
        match fullness_test(&comm, &b).unwrap() {
            FullnessVerdict::Full { witness } => {
                assert_eq!(witness.n, 2);
                assert!(verify_regular(&comm, &witness).unwrap());
            }
            v => panic!("{v:?}"),
        }
        let zero = MatrixPoly::zero(1, 1, Alphabet::analytic(1));
        assert!(!fullness_test(&zero, &b).unwrap().is_full());
        let outer = MatrixPoly::from_entries(&[
            vec![&FreePoly::x(0) * &FreePoly::x(0), &FreePoly::x(0) * &FreePoly::x(1)],
            vec![&FreePoly::x(1) * &FreePoly::x(0), &FreePoly::x(1) * &FreePoly::x(1)],
        ]);
        assert!(!fullness_test(&outer, &b).unwrap().is_full());
    }

    #[test]
    fn unit_examples() {
        let b = Budget { n_max: 3, trials: 5, ..Budget::with_seed(2) };
        let c = MatrixPoly::constant(DenseMatrix::from_ints(&[&[2, 1], &[1, 1]]), Alphabet::analytic(1));
        assert!(unit_test(&c, &b).unwrap().is_unit());
        assert!(!unit_test(&poly(FreePoly::x(0)), &b).unwrap().is_unit());
        let unip = MatrixPoly::from_entries(&[
            vec![FreePoly::one(Alphabet::analytic(1)), FreePoly::x(0)],
            vec![FreePoly::zero(Alphabet::analytic(1)), FreePoly::one(Alphabet::analytic(1))],
        ]);
        assert!(unit_test(&unip, &b).unwrap().is_unit());
    }

    #[test]
    fn degree_slopes() {
        let b = Budget { trials: 3, ..Budget::with_seed(4) };
        let x1 = poly(FreePoly::x(0));
        assert_eq!(estimate_locus_degree(&x1, &[1, 2, 3], &b).unwrap().slope, Some(1));
        let x1x2 = poly(&FreePoly::x(0) * &FreePoly::x(1));
        let d = estimate_locus_degree(&x1x2, &[1, 2, 3], &b).unwrap();
        assert_eq!(d.samples, vec![(1, 2), (2, 4), (3, 6)]);
        let comm = poly(&(&FreePoly::x(0) * &FreePoly::x(1)) - &(&FreePoly::x(1) * &FreePoly::x(0)));
        let d = estimate_locus_degree(&comm, &[1, 2, 3], &b).unwrap();
        assert_eq!(d.samples[0], (1, 0));
        assert!(d.samples[1].1 > 0 && d.samples[2].1 > d.samples[1].1);
    }
}
