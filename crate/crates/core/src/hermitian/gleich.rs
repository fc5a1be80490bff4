//! Equivalence of indecomposable pencils up to the involution, and the
//! hermitian form `M = ±P·L·P*`.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use super::real::Side;
use super::unsignatured::UnsignaturedWitness;
use crate::error::{Error, Result};
use crate::freealg::Context;
use crate::linalg::random::seeded;
use crate::linalg::{DenseMatrix, Scalar};
use crate::linearize::LinearPencil;
use crate::structure::{is_indecomposable_with, pencil_equiv, EquivalenceWitness, IndecomposableOptions, IndecomposableVerdict};

/// Indecomposability of a pencil. A non-monic pencil is reduced to the
/// monic one with coefficients `T⁻¹A_j` for an invertible combination
/// `T = Σ c_j A_j`; block-triangular forms of the two correspond. `None`
/// when no invertible combination was sampled.
pub fn pencil_indecomposability(l: &LinearPencil, seed: u64) -> Result<Option<IndecomposableVerdict>> {
    let opts = IndecomposableOptions { seed, real_only: false };
    if l.is_monic() {
        return is_indecomposable_with(l, opts).map(Some);
    }
    let d = l.size();
    let coeffs = l.coefficients();
    let mut rng = seeded(seed ^ 0x696e_6465);
    for _ in 0..20 {
        let mut t = DenseMatrix::zeros(d, d);
        for a in coeffs {
            t = &t + &a.scale(&Scalar::from_int(rng.gen_range(-10..=10)));
        }
        if let Some(ti) = t.inverse() {
            let gens = coeffs.iter().map(|a| &ti * a).collect();
            let monic = LinearPencil::analytic(DenseMatrix::identity(d), gens)?;
            return is_indecomposable_with(&monic, opts).map(Some);
        }
    }
    Ok(None)
}

fn require_indecomposable(l: &LinearPencil, seed: u64) -> Result<()> {
    match pencil_indecomposability(l, seed)? {
        Some(IndecomposableVerdict::No { .. }) => Err(Error::NotIndecomposable),
        _ => Ok(()),
    }
}

fn is_analytic(l: &LinearPencil) -> bool {
    l.alphabet().context == Context::Analytic
        || l.alphabet().letters().iter().zip(l.linear_coefficients()).all(|(x, a)| !x.star || a.is_zero())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GleichWitness {
    /// `M = P·L·Q` for `F`, `M = P·L*·Q` for `FStar`.
    pub which: Side,
    pub witness: EquivalenceWitness,
}

/// `M = P·L·Q` or `M = P·L*·Q` for indecomposable `L` analytic and `M`.
pub fn gleichstellensatz_analytic(l: &LinearPencil, m: &LinearPencil, seed: u64) -> Result<Option<GleichWitness>> {
    if !is_analytic(l) {
        return Err(Error::NotAnalytic);
    }
    if l.size() != m.size() {
        return Ok(None);
    }
    require_indecomposable(l, seed)?;
    require_indecomposable(m, seed)?;
    if let Some(witness) = pencil_equiv(l, m, seed)? {
        return Ok(Some(GleichWitness { which: Side::F, witness }));
    }
    Ok(pencil_equiv(&l.adjoint(), m, seed)?.map(|witness| GleichWitness { which: Side::FStar, witness }))
}

/// `M = sign·scale·P·L·P*`; `scale` is 1 unless the rescaling needed a
/// square root outside `ℚ(i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermitianEquivalence {
    pub sign: i8,
    pub p: DenseMatrix,
    pub scale: Scalar,
}

/// Exact check of `M = sign·scale·P·L·P*`.
pub fn verify_hermitian_equivalence(l: &LinearPencil, m: &LinearPencil, w: &HermitianEquivalence) -> bool {
    if l.size() != m.size() || w.p.rows() != l.size() || !w.p.is_invertible() {
        return false;
    }
    let a = l.alphabet().join(m.alphabet());
    let (Ok(l), Ok(m)) = (l.with_alphabet(a), m.with_alphabet(a)) else { return false };
    let c = &w.scale * &Scalar::from_int(i64::from(w.sign));
    let pa = w.p.adjoint();
    l.coefficients().iter().zip(m.coefficients()).all(|(x, y)| (&(&w.p * x) * &pa).scale(&c) == *y)
}

/// For hermitian indecomposable `L` and `M = P·L·Q`, hermitian symmetry
/// gives a second solution `(Q*, P*)`; the scalar stabilizer forces
/// `Q = c·P*` with `c` real, so `M = c·P·L·P*`, and `P` is rescaled by
/// `μ` with `|μ|² = |c|`.
pub fn gleichstellensatz_hermitian(
    l: &LinearPencil,
    m: &LinearPencil,
    witness: &UnsignaturedWitness,
    seed: u64,
) -> Result<Option<HermitianEquivalence>> {
    if !l.is_hermitian() || !m.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !witness.verify(&l.to_matrix_poly())? {
        return Err(Error::InvalidWitness("values are not invertible with distinct signatures".into()));
    }
    if l.size() != m.size() {
        return Ok(None);
    }
    require_indecomposable(l, seed)?;
    let Some(w) = pencil_equiv(l, m, seed)? else { return Ok(None) };
    let pa = w.p.adjoint();
    let k = pa.entries().iter().position(|z| !z.is_zero()).expect("invertible");
    let c = &w.q.entries()[k] / &pa.entries()[k];
    if pa.scale(&c) != w.q || !c.is_real() {
        return Err(Error::NotIndecomposable);
    }
    let sign: i8 = if c.re().is_positive() { 1 } else { -1 };
    let abs = c.re().abs();
    let (p, scale) = match gaussian_sqrt_of_norm(&abs) {
        Some(mu) => (normalize_phase(&w.p.scale(&mu)), Scalar::one()),
        None => (w.p.clone(), Scalar::from_rational(abs)),
    };
    let out = HermitianEquivalence { sign, p, scale };
    debug_assert!(verify_hermitian_equivalence(l, m, &out));
    Ok(Some(out))
}

/// Multiplies by a unit of `ℚ(i)` making the first nonzero entry positive,
/// when its modulus is rational.
fn normalize_phase(p: &DenseMatrix) -> DenseMatrix {
    let Some(z) = p.entries().iter().find(|z| !z.is_zero()) else { return p.clone() };
    match rational_sqrt(&z.norm_sqr()) {
        Some(r) => p.scale(&(&z.conj() / &Scalar::from_rational(r))),
        None => p.clone(),
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let (n, d) = (q.numer().to_biguint()?, q.denom().to_biguint()?);
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == n && &sd * &sd == d).then(|| BigRational::new(sn.into(), sd.into()))
}

/// `μ ∈ ℚ(i)` with `|μ|² = q` for `q > 0`, when one exists and the
/// numerator and denominator factor completely.
pub fn gaussian_sqrt_of_norm(q: &BigRational) -> Option<Scalar> {
    if !q.is_positive() {
        return None;
    }
    let (a, b) = two_squares(&q.numer().to_biguint()?)?;
    let (c, d) = two_squares(&q.denom().to_biguint()?)?;
    let alpha = Scalar::new(BigRational::from(a), BigRational::from(b));
    let beta = Scalar::new(BigRational::from(c), BigRational::from(d));
    Some(&alpha / &beta)
}

fn gauss_mul(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// `(a, b)` with `a² + b² = n`, from the factorization of `n`: primes
/// `≡ 3 (mod 4)` must occur to even powers.
pub fn two_squares(n: &BigUint) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    let (factors, rest) = num_prime::nt_funcs::factors(n.clone(), None);
    if rest.is_some() {
        return None;
    }
    let mut acc = (BigInt::one(), BigInt::zero());
    for (p, e) in factors {
        let r = (&p % 4u32).to_u32().expect("small");
        let g = if p == BigUint::from(2u32) {
            (BigInt::one(), BigInt::one())
        } else if r == 3 {
            if e % 2 == 1 {
                return None;
            }
            let pp = BigInt::from_biguint(Sign::Plus, p.pow((e / 2) as u32));
            acc = (&acc.0 * &pp, &acc.1 * &pp);
            continue;
        } else {
            cornacchia(&p)
        };
        for _ in 0..e {
            acc = gauss_mul(&acc, &g);
        }
    }
    Some(acc)
}

/// `p = a² + b²` for a prime `p ≡ 1 (mod 4)`: take `r² ≡ −1` and run the
/// Euclidean algorithm on `(p, r)` until the remainder drops below `√p`.
fn cornacchia(p: &BigUint) -> (BigInt, BigInt) {
    let one = BigUint::one();
    let minus_one = p - &one;
    let quarter = &minus_one >> 2;
    let half = &minus_one >> 1;
    let mut z = BigUint::from(2u32);
    while z.modpow(&half, p) != minus_one {
        z += &one;
    }
    let r = z.modpow(&quarter, p);
    let (mut a, mut b) = (p.clone(), r);
    while &b * &b > *p {
        let t = &a % &b;
        a = b;
        b = t;
    }
    let c = (p - &b * &b).sqrt();
    debug_assert_eq!(&b * &b + &c * &c, *p);
    (BigInt::from(b), BigInt::from(c))
}
