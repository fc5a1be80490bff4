//! Exact evaluation at `y ↦ Y`, `y* ↦ f(X)·Y⁻¹`, where `f − y*y` vanishes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{evaluate, EvalMode, MatrixTuple};
use crate::freealg::{Alphabet, FreePoly, MatrixPoly};
use crate::linalg::random::{random_invertible, seeded};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub n: usize,
    pub samples: usize,
    /// Samples where `h` evaluated to exactly zero.
    pub zero_samples: usize,
    /// Largest entry modulus over all samples.
    pub max_deviation: f64,
}

impl ConsistencyReport {
    pub fn all_zero(&self) -> bool {
        self.zero_samples == self.samples
    }
}

/// Evaluates `h` at random `(X, Y)` with `Y` invertible and `y*` sent to
/// `f(X)·Y⁻¹`; starred `x` letters get independent values. Members of
/// `(f − y*y)` vanish at every sample.
pub fn sample_hard_zero_consistency(f: &FreePoly, h: &FreePoly, n: usize, samples: usize, seed: u64) -> Result<ConsistencyReport> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    if f.is_constant() {
        return Err(Error::ConstantF);
    }
    if f.has_slack() {
        return Err(Error::SlackInF);
    }
    let g = h.alphabet().nvars.max(f.alphabet().nvars);
    let fm = MatrixPoly::from_free(f).with_alphabet(Alphabet::analytic(g).join(f.alphabet()));
    let hm = MatrixPoly::from_free(h).with_alphabet(Alphabet::slack(g));
    let mut rng = seeded(seed ^ 0x6861_7264);
    let mut zero_samples = 0;
    let mut max_deviation: f64 = 0.0;
    for _ in 0..samples {
        let pt = MatrixTuple::random(&mut rng, g as usize, n, 5, true, EvalMode::Free);
        let y = random_invertible(&mut rng, n, 5, true);
        let yi = y.inverse().expect("invertible");
        let fx = evaluate(&fm, &pt)?;
        let pt = pt.with_slack(y, Some(&fx * &yi));
        let v = evaluate(&hm, &pt)?;
        if v.is_zero() {
            zero_samples += 1;
        }
        let dev = v.entries().iter().map(|z| z.to_complex64().norm()).fold(0.0, f64::max);
        max_deviation = max_deviation.max(dev);
    }
    Ok(ConsistencyReport { n, samples, zero_samples, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slack::reduce::generator;

    fn f() -> FreePoly {
        let x = FreePoly::x(0);
        &(&x * &FreePoly::x(1)) + &FreePoly::one(x.alphabet())
    }

    #[test]
    fn generator_vanishes() {
        let r = sample_hard_zero_consistency(&f(), &generator(&f()), 2, 10, 0).unwrap();
        assert!(r.all_zero());
        let r = sample_hard_zero_consistency(&f(), &FreePoly::y_star(), 2, 10, 0).unwrap();
        assert_eq!(r.zero_samples, 0);
        assert!(r.max_deviation > 0.0);
    }

    #[test]
    fn preconditions() {
        let x = FreePoly::x_star(0);
        assert_eq!(sample_hard_zero_consistency(&x, &x, 1, 1, 0), Err(Error::NotAnalytic));
        let one = FreePoly::one(Alphabet::analytic(1));
        assert_eq!(sample_hard_zero_consistency(&one, &one, 1, 1, 0), Err(Error::ConstantF));
    }
}
