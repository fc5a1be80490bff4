//! Conjugation symmetry of determinant gradients: for analytic `f`,
//! `∂ det f(𝔛)/∂ω_{jıȷ}` at `X` equals the conjugate of
//! `∂ det f*(𝔜)/∂υ_{jȷı}` at `X*`.

use nalgebra::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{evaluate, symbolic_generic_det, MatrixTuple};
use crate::freealg::MatrixPoly;
use crate::linalg::float::to_complex_matrix;
use crate::linalg::{DenseMatrix, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradientReport {
    pub n: usize,
    pub partials: usize,
    /// Exact equality of every symbolic partial with its conjugate partner.
    pub exact_agree: bool,
    /// Largest relative deviation of a central difference from the exact
    /// partial, over both `f` and `f*`.
    pub max_difference_error: f64,
}

const STEP: f64 = 1.0 / 4096.0;

fn float_det(f: &MatrixPoly, x: &MatrixTuple) -> Result<Complex<f64>> {
    Ok(to_complex_matrix(&evaluate(f, x)?).determinant())
}

fn perturbed(x: &[DenseMatrix], j: usize, i: usize, jj: usize, h: f64) -> Vec<DenseMatrix> {
    let mut out = x.to_vec();
    let step = Scalar::from_rational(num_rational::BigRational::from_float(h).expect("finite"));
    out[j][(i, jj)] = &out[j][(i, jj)] + &step;
    out
}

fn relative(a: Complex<f64>, exact: Complex<f64>) -> f64 {
    (a - exact).norm() / exact.norm().max(1.0)
}

/// Checks the identity at `x` (size `n ∈ {1, 2}`) symbolically, and
/// against central differences of floating-point determinants.
pub fn gradient_conjugation_check(f: &MatrixPoly, x: &[DenseMatrix]) -> Result<GradientReport> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    let g = f.alphabet().nvars as usize;
    if x.len() != g {
        return Err(Error::ArityMismatch { expected: g, got: x.len() });
    }
    let n = x.first().map_or(1, DenseMatrix::rows);
    let fs = f.adjoint();
    let gd = symbolic_generic_det(f, n)?;
    let gs = symbolic_generic_det(&fs, n)?;
    let nn = (n * n) as u32;
    // ω at X, υ at X*
    let at = |v: u32| -> Scalar {
        let (block, rem) = ((v / nn) as usize, (v % nn) as usize);
        let (i, jj) = (rem / n, rem % n);
        if block < g {
            x[block][(i, jj)].clone()
        } else {
            x[block - g][(jj, i)].conj()
        }
    };
    let adj: Vec<DenseMatrix> = x.iter().map(DenseMatrix::adjoint).collect();
    let two_h = 2.0 * STEP;
    let mut exact_agree = true;
    let mut max_err: f64 = 0.0;
    let mut partials = 0;
    for j in 0..g {
        for i in 0..n {
            for jj in 0..n {
                let a = gd.poly.partial(gd.coordinate(j, false, i, jj)).eval(&at);
                let b = gs.poly.partial(gs.coordinate(j, true, jj, i)).eval(&at);
                exact_agree &= a == b.conj();
                partials += 1;
                let plus = MatrixTuple::star(perturbed(x, j, i, jj, STEP));
                let minus = MatrixTuple::star(perturbed(x, j, i, jj, -STEP));
                let fd = (float_det(f, &plus)? - float_det(f, &minus)?) / two_h;
                max_err = max_err.max(relative(fd, a.to_complex64()));
                let plus = MatrixTuple::free(x.to_vec(), perturbed(&adj, j, jj, i, STEP));
                let minus = MatrixTuple::free(x.to_vec(), perturbed(&adj, j, jj, i, -STEP));
                let fd = (float_det(&fs, &plus)? - float_det(&fs, &minus)?) / two_h;
                max_err = max_err.max(relative(fd, b.to_complex64()));
            }
        }
    }
    Ok(GradientReport { n, partials, exact_agree, max_difference_error: max_err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::FreePoly;
    use crate::linalg::random::{random_matrix, seeded};

    #[test]
    fn commutator_and_square() {
        let x = FreePoly::x(0);
        let y = FreePoly::x(1);
        let mut rng = seeded(2);
        for f in [&(&x * &y) - &(&y * &x), &(&x * &x) + &y] {
            let f = MatrixPoly::from_free(&f);
            for n in 1..=2 {
                let pt: Vec<DenseMatrix> = (0..2).map(|_| random_matrix(&mut rng, n, n, 3, true)).collect();
                let r = gradient_conjugation_check(&f, &pt).unwrap();
                assert!(r.exact_agree);
                assert!(r.max_difference_error < 1e-6, "{r:?}");
            }
        }
    }
}
