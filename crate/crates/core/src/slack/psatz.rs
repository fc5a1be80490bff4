//! Certificates `h = f₀ + Σ f_j*f_j` with `f₀ ∈ (f − y*y)`, and the
//! positivity witness `f(X, X*) ≻ 0` they presuppose.

use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use super::reduce::{is_member, Membership};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::{evaluate, MatrixTuple};
use crate::freealg::{quadratic_parts, FreePoly, Letter, MatrixPoly, Var};
use crate::linalg::float::{psd_sqrt, to_complex_matrix};
use crate::linalg::random::{random_scalar, seeded, SeededRng};
use crate::linalg::{hermitian_signature, DenseMatrix, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsatzCertificate {
    pub fj: Vec<FreePoly>,
}

impl PsatzCertificate {
    /// `f₀ = h − Σ f_j*f_j`.
    pub fn residual(&self, h: &FreePoly) -> FreePoly {
        self.fj.iter().fold(h.clone(), |acc, p| &acc - &(&p.adjoint() * p))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PsatzVerdict {
    Accept { f0: FreePoly, positivity_point: MatrixTuple },
    /// `residual` is the nonzero normal form of `f₀`.
    Reject { f0: FreePoly, residual: FreePoly },
}

impl PsatzVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, PsatzVerdict::Accept { .. })
    }
}

/// Random point of size `n` with entries shrunk by `2^-k / bound`, so that
/// small balls around the origin are sampled too.
fn scaled_point(rng: &mut SeededRng, g: usize, n: usize, bound: i64, k: u32) -> MatrixTuple {
    let scale = Scalar::from_ratio(1, bound.max(1) << k.min(40));
    let x = (0..g)
        .map(|_| {
            let data = (0..n * n).map(|_| &random_scalar(rng, bound, true) * &scale).collect();
            DenseMatrix::from_vec(n, n, data)
        })
        .collect();
    MatrixTuple::star(x)
}

fn star_value(f: &FreePoly, x: &MatrixTuple) -> Result<DenseMatrix> {
    evaluate(&MatrixPoly::from_free(f), x)
}

/// A star-evaluation point with `f(X, X*) ≻ 0`, checked exactly; the origin
/// at size 1 is tried first.
pub fn positivity_witness(f: &FreePoly, budget: &Budget) -> Result<Option<MatrixTuple>> {
    if !f.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let g = f.alphabet().nvars as usize;
    let origin = MatrixTuple::star(vec![DenseMatrix::zeros(1, 1); g]);
    if hermitian_signature(&star_value(f, &origin)?)?.is_positive_definite() {
        return Ok(Some(origin));
    }
    let mut rng = seeded(budget.seed ^ 0x706f_7369);
    for n in 1..=budget.n_max {
        for t in 0..budget.trials {
            let x = scaled_point(&mut rng, g, n, budget.bound, (t % 8) as u32);
            if hermitian_signature(&star_value(f, &x)?)?.is_positive_definite() {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

fn max_var(p: &FreePoly) -> u32 {
    p.terms()
        .keys()
        .flat_map(|w| w.letters().iter())
        .filter_map(|l| match l.var {
            Var::X(k) => Some(k + 1),
            Var::Y => None,
        })
        .max()
        .unwrap_or(0)
}

/// Accepts iff `h − Σ f_j*f_j` reduces to zero modulo `(f − y*y)`. The
/// residual `h` may itself use the slack letters.
pub fn verify_psatz(h: &FreePoly, f: &FreePoly, cert: &PsatzCertificate, budget: &Budget) -> Result<PsatzVerdict> {
    quadratic_parts(f)?;
    let g = max_var(h).max(max_var(f));
    if let Some(j) = cert.fj.iter().position(|p| max_var(p) > g) {
        return Err(Error::MalformedCertificate(format!("f_{} uses a variable absent from h and f", j + 1)));
    }
    let positivity_point = positivity_witness(f, budget)?.ok_or(Error::NoPositivityWitness)?;
    let f0 = cert.residual(h);
    Ok(match is_member(&f0, f)? {
        Membership::Yes => PsatzVerdict::Accept { f0, positivity_point },
        Membership::No { normal_form } => PsatzVerdict::Reject { f0, residual: normal_form },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemanticMembership {
    pub membership: Membership,
    /// Point with `f(X, X*) ≻ 0`, when `f` is hermitian and one was found.
    pub positivity_point: Option<MatrixTuple>,
    /// Whether membership can be read as `h` vanishing wherever `f = y*y`
    /// on the real points: requires hermitian `f` with `{f ≻ 0} ≠ ∅`.
    pub semantic: bool,
}

pub fn is_member_semantic(h: &FreePoly, f: &FreePoly, budget: &Budget) -> Result<SemanticMembership> {
    let membership = is_member(h, f)?;
    let positivity_point = if f.is_hermitian() { positivity_witness(f, budget)? } else { None };
    Ok(SemanticMembership { membership, semantic: positivity_point.is_some(), positivity_point })
}

type CMat = DMatrix<Complex<f64>>;

/// Floating-point value of `h` with a value for every letter.
pub fn float_evaluate(h: &FreePoly, n: usize, value: &dyn Fn(Letter) -> CMat) -> CMat {
    let mut acc = CMat::zeros(n, n);
    for (w, c) in h.terms() {
        let mut m = CMat::identity(n, n) * c.to_complex64();
        for &l in w.letters() {
            m *= value(l);
        }
        acc += m;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpotCheck {
    pub points: usize,
    pub attempts: usize,
    pub min_eigenvalue: f64,
}

/// Samples `X` with `f(X, X*) ⪰ 0`, sets `Y = f(X, X*)^{1/2}` so that
/// `Y*Y = f`, and records the smallest eigenvalue of the hermitian part
/// of `h(X, X*, Y, Y*)`.
pub fn psatz_spot_check(h: &FreePoly, f: &FreePoly, points: usize, budget: &Budget) -> Result<SpotCheck> {
    let g = max_var(h).max(max_var(f)) as usize;
    let mut rng = seeded(budget.seed ^ 0x7370_6f74);
    let (mut found, mut attempts, mut min_eig) = (0, 0, f64::INFINITY);
    while found < points && attempts < 200 * points.max(1) {
        let n = 1 + attempts % budget.n_max.max(1);
        let x = scaled_point(&mut rng, g, n, budget.bound, (attempts % 6) as u32);
        attempts += 1;
        let fx = star_value(f, &x)?;
        if !hermitian_signature(&fx)?.is_positive_semidefinite() {
            continue;
        }
        found += 1;
        let y = psd_sqrt(&to_complex_matrix(&fx));
        let xs: Vec<CMat> = x.x.iter().map(to_complex_matrix).collect();
        let value = |l: Letter| match l.var {
            Var::X(k) if l.star => xs[k as usize].adjoint(),
            Var::X(k) => xs[k as usize].clone(),
            Var::Y => y.clone(),
        };
        let hv = float_evaluate(h, n, &value);
        let herm = (&hv + hv.adjoint()) * Complex::new(0.5, 0.0);
        let e = herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        min_eig = min_eig.min(e);
    }
    Ok(SpotCheck { points: found, attempts, min_eigenvalue: min_eig })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Alphabet;
    use crate::slack::reduce::generator;

    fn f() -> FreePoly {
        let x = FreePoly::x(0);
        &FreePoly::one(x.alphabet()) - &(&FreePoly::x_star(0) * &x)
    }

    fn b() -> Budget {
        Budget { n_max: 2, trials: 20, bound: 4, ..Budget::with_seed(1) }
    }

    #[test]
    fn constructed_certificate_accepts() {
        let f = f();
        let x = FreePoly::x(0);
        let h = &generator(&f) + &(&FreePoly::x_star(0) * &x);
        let cert = PsatzCertificate { fj: vec![x.clone()] };
        let v = verify_psatz(&h, &f, &cert, &b()).unwrap();
        assert!(v.is_accept());
        let s = psatz_spot_check(&h, &f, 20, &b()).unwrap();
        assert_eq!(s.points, 20);
        assert!(s.min_eigenvalue >= -1e-8, "{s:?}");
    }

    #[test]
    fn trivial_and_rejecting() {
        let f = f();
        let one = FreePoly::one(f.alphabet());
        let v = verify_psatz(&one, &f, &PsatzCertificate { fj: vec![one.clone()] }, &b()).unwrap();
        assert!(v.is_accept());
        let minus = one.scale(&Scalar::from_int(-1));
        match verify_psatz(&minus, &f, &PsatzCertificate { fj: vec![] }, &b()).unwrap() {
            PsatzVerdict::Reject { residual, .. } => assert_eq!(residual, minus),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn needs_positive_point() {
        let f = &FreePoly::one(Alphabet::involutive(1)).scale(&Scalar::from_int(-1)) - &(&FreePoly::x_star(0) * &FreePoly::x(0));
        let one = FreePoly::one(f.alphabet());
        assert_eq!(verify_psatz(&one, &f, &PsatzCertificate { fj: vec![] }, &b()), Err(Error::NoPositivityWitness));
    }
}
