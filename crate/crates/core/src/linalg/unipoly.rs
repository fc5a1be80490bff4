//! Univariate polynomials over `ℚ(i)`, Sturm sequences and root recovery.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        UniPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `t − a`.
    pub fn linear_root(a: &Scalar) -> Self {
        UniPoly::new(vec![-a, Scalar::one()])
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex64())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Coefficientwise conjugate, so that `p̄(t̄) = conj(p(t))`.
    pub fn conj(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// Normalize to leading coefficient 1; the zero polynomial is unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if nd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let s = &c * dc;
                rem[k + j] -= &s;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Quotient of an exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, p: &UniPoly) -> bool {
        p.divrem(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b.monic();
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p′)`, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.divrem(&g).0.monic())
    }

    /// Interpolate through `(k, values[k])` for `k = 0, …, D`.
    pub fn interpolate(values: &[Scalar]) -> UniPoly {
        // Newton divided differences on integer nodes
        let n = values.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let diff = &dd[k] - &dd[k - 1];
                dd[k] = &diff / &Scalar::from_int(level as i64);
            }
        }
        let mut p = UniPoly::zero();
        for k in (0..n).rev() {
            p = &(&p * &UniPoly::linear_root(&Scalar::from_int(k as i64))) + &UniPoly::constant(dd[k].clone());
        }
        p
    }

    /// Distinct roots lying in `ℚ(i)`, each verified exactly.
    pub fn gaussian_rational_roots(&self) -> Vec<Scalar> {
        let Ok(p) = self.squarefree_part() else {
            return Vec::new();
        };
        match p.degree() {
            None | Some(0) => return Vec::new(),
            Some(1) => return vec![-&p.coeffs[0]],
            _ => {}
        }
        let mut roots: Vec<Scalar> = Vec::new();
        for z in approximate_roots(&p) {
            let Some(cand) = reconstruct(z) else { continue };
            if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
        roots
    }
}

/// Approximate all complex roots by Durand–Kerner iteration with Newton polish.
pub fn approximate_roots(p: &UniPoly) -> Vec<Complex64> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let lc = p.leading().unwrap().to_complex64();
    let c: Vec<Complex64> = p.coeffs.iter().map(|a| a.to_complex64() / lc).collect();
    let radius = 1.0
        + c[..d]
            .iter()
            .map(|a| a.norm())
            .fold(0.0_f64, f64::max);
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|k| seed.powu(k as u32) * (radius / 2.0).max(0.5))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0_f64;
        for k in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    den *= roots[k] - roots[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = eval(roots[k]) / den;
            roots[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    let dp: Vec<Complex64> = (1..=d).map(|k| c[k] * k as f64).collect();
    let deval = |z: Complex64| dp.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    for r in roots.iter_mut() {
        for _ in 0..5 {
            let dv = deval(*r);
            if dv.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / dv;
        }
    }
    roots
}

/// Best rational approximation from continued-fraction convergents.
pub fn rational_approximation(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 as u64 > max_den {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(BigRational::new(h1.into(), k1.into()));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            return Some(BigRational::new(h1.into(), k1.into()));
        }
        r = 1.0 / frac;
    }
    None
}

fn reconstruct(z: Complex64) -> Option<Scalar> {
    let re = rational_approximation(z.re, 1_000_000, 1e-9)?;
    let im = if z.im.abs() < 1e-9 * (1.0 + z.re.abs()) {
        BigRational::zero()
    } else {
        rational_approximation(z.im, 1_000_000, 1e-9)?
    };
    Some(Scalar::new(re, im))
}

/// A closed interval `[a, b]`, or the whole real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interval {
    RealLine,
    Closed(BigRational, BigRational),
}

/// Interval `(lo, hi]` containing exactly one real root; the root is `hi`
/// itself when `exact` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "rational_string")]
    pub lo: BigRational,
    #[serde(with = "rational_string")]
    pub hi: BigRational,
    pub exact: bool,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct SturmChain {
    seq: Vec<Vec<BigRational>>,
}

fn real_coeffs(p: &UniPoly) -> Result<Vec<BigRational>> {
    p.coeffs
        .iter()
        .map(|c| {
            if c.is_real() {
                Ok(c.re().clone())
            } else {
                Err(Error::DimensionMismatch("Sturm sequences need real coefficients".into()))
            }
        })
        .collect()
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn eval_rational(c: &[BigRational], t: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * t + a)
}

impl SturmChain {
    fn new(p: &UniPoly) -> Result<Self> {
        let sq = p.squarefree_part()?;
        let mut seq = vec![real_coeffs(&sq)?];
        let mut a = sq.clone();
        let mut b = sq.derivative();
        while !b.is_zero() {
            seq.push(real_coeffs(&b)?);
            let r = a.divrem(&b).1;
            a = b;
            b = -&r;
        }
        Ok(SturmChain { seq })
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    fn at(&self, t: &BigRational) -> usize {
        Self::changes(self.seq.iter().map(|c| sign_of(&eval_rational(c, t))))
    }

    fn at_infinity(&self, positive: bool) -> usize {
        Self::changes(self.seq.iter().map(|c| {
            let s = sign_of(c.last().expect("nonzero"));
            if positive || (c.len() - 1) % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    fn base(&self) -> &[BigRational] {
        &self.seq[0]
    }
}

/// Number of distinct real roots of a real polynomial in the interval.
/// Roots at the endpoints of a closed interval are counted.
pub fn sturm_real_root_count(p: &UniPoly, interval: &Interval) -> Result<usize> {
    let chain = SturmChain::new(p)?;
    Ok(match interval {
        Interval::RealLine => chain.at_infinity(false) - chain.at_infinity(true),
        Interval::Closed(a, b) => {
            if a > b {
                return Ok(0);
            }
            let at_a = usize::from(eval_rational(chain.base(), a).is_zero());
            chain.at(a) - chain.at(b) + at_a
        }
    })
}

/// Isolating intervals for every real root, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<IsolatingInterval>> {
    let chain = SturmChain::new(p)?;
    let c = chain.base();
    let lc = c.last().unwrap().abs();
    let bound = c[..c.len() - 1]
        .iter()
        .map(|a| a.abs() / &lc)
        .fold(BigRational::zero(), |m, a| if a > m { a } else { m })
        + BigRational::one();
    let mut out = Vec::new();
    let mut stack = vec![(-&bound - BigRational::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = chain.at(&lo) - chain.at(&hi);
        match count {
            0 => {}
            1 => {
                let exact = eval_rational(c, &hi).is_zero();
                out.push(IsolatingInterval { lo, hi, exact });
            }
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

impl<'a> std::ops::Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> std::ops::Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> std::ops::Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let p = a * b;
                out[i + j] += &p;
            }
        }
        UniPoly::new(out)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sturm_counts() {
        let line = Interval::RealLine;
        assert_eq!(sturm_real_root_count(&UniPoly::from_ints(&[1, 0, 1]), &line).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&UniPoly::from_ints(&[-2, 0, 1]), &line).unwrap(), 2);
        let cubic = UniPoly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(sturm_real_root_count(&cubic, &Interval::Closed(q(0), q(2))).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&cubic, &Interval::Closed(q(-1), q(0))).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&cubic, &line).unwrap(), 3);
        assert_eq!(
            sturm_real_root_count(&UniPoly::zero(), &line),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_examples() {
        // (t−1)²(t+2) = t³ − 3t + 2
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree_part().unwrap(), UniPoly::from_ints(&[-2, 1, 1]));
        assert_eq!(UniPoly::t().squarefree_part().unwrap(), UniPoly::t());
        assert_eq!(UniPoly::from_ints(&[5]).squarefree_part().unwrap(), UniPoly::one());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UniPoly::new(vec![Scalar::from_ratio(1, 3), Scalar::i(), Scalar::from_int(-2), Scalar::from_int(7)]);
        let vals: Vec<Scalar> = (0..5).map(|k| p.eval(&Scalar::from_int(k))).collect();
        assert_eq!(UniPoly::interpolate(&vals), p);
    }

    #[test]
    fn gaussian_roots() {
        // (t − 1/2)(t − (2 − 3i))(t² + 2)
        let mut p = UniPoly::linear_root(&Scalar::from_ratio(1, 2));
        p = &p * &UniPoly::linear_root(&Scalar::from_gaussian(2, -3));
        p = &p * &UniPoly::from_ints(&[2, 0, 1]);
        let mut roots = p.gaussian_rational_roots();
        roots.sort_by_key(|r| r.to_string());
        assert_eq!(roots, vec![Scalar::from_ratio(1, 2), Scalar::from_gaussian(2, -3)]);
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).gaussian_rational_roots().len(), 2);
    }

    #[test]
    fn isolation() {
        let p = UniPoly::from_ints(&[0, -2, 0, 1]);
        let iv = isolate_real_roots(&p).unwrap();
        assert_eq!(iv.len(), 3);
        for w in &iv {
            let c = sturm_real_root_count(&p, &Interval::Closed(w.lo.clone(), w.hi.clone())).unwrap();
            assert!(c >= 1);
        }
        for w in &iv {
            assert_eq!(w.exact, p.eval(&Scalar::from_rational(w.hi.clone())).is_zero());
        }
        assert!(iv.windows(2).all(|w| w[0].hi <= w[1].lo));
    }
}
