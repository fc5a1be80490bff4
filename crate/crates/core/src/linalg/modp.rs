//! Prime-field arithmetic used as a fast randomized evaluation backend.
//!
//! Exact results are never derived from this module alone: a nonzero
//! residue proves a nonzero rational, a zero residue proves nothing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::DenseMatrix;
use super::scalar::Scalar;

/// `2³¹ − 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// `15·2²⁷ + 1`, congruent to 1 mod 4, so `i` has an image.
pub const GAUSSIAN_PRIME: u64 = 2_013_265_921;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a prime below 2^62")]
pub struct NotPrime(pub u64);

/// An element of `F_p` stored as its canonical residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    pub value: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    sqrt_minus_one: Option<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, NotPrime> {
        if p >= (1 << 62) || !is_prime_u64(p) {
            return Err(NotPrime(p));
        }
        let sqrt_minus_one = if p % 4 == 1 {
            (2..p).find_map(|c| {
                let r = pow_mod(c, (p - 1) / 4, p);
                (mul_mod(r, r, p) == p - 1).then_some(r)
            })
        } else {
            None
        };
        Ok(PrimeField { p, sqrt_minus_one })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a % self.p != 0).then(|| pow_mod(a, self.p - 2, self.p))
    }

    pub fn element(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: v.rem_euclid(self.p as i64) as u64,
        }
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits")
    }

    fn reduce_rational(&self, r: &num_rational::BigRational) -> Option<u64> {
        let num = self.reduce_int(r.numer());
        let den = self.reduce_int(r.denom());
        Some(self.mul(num, self.inv(den)?))
    }

    /// Image of a Gaussian rational, if the reduction map is defined on it.
    pub fn reduce(&self, z: &Scalar) -> Option<u64> {
        let re = self.reduce_rational(z.re())?;
        if z.im().is_zero() {
            return Some(re);
        }
        let i = self.sqrt_minus_one?;
        let im = self.reduce_rational(z.im())?;
        Some(self.add(re, self.mul(i, im)))
    }

    /// Lift a residue to the integer in `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn reduce_matrix(&self, m: &DenseMatrix) -> Option<ModMatrix> {
        let data = m
            .entries()
            .iter()
            .map(|z| self.reduce(z))
            .collect::<Option<Vec<_>>>()?;
        Some(ModMatrix {
            field: *self,
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }
}

/// Dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ModMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for k in 0..n {
            m.data[k * n + k] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let f = self.field;
        let mut out = ModMatrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &ModMatrix) -> ModMatrix {
        let f = self.field;
        ModMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f.add(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let f = self.field;
        ModMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(*a, c)).collect(),
        }
    }

    /// `self ⊗ o` (Kronecker product, `self` outer).
    pub fn kron(&self, o: &ModMatrix) -> ModMatrix {
        let f = self.field;
        let mut out = ModMatrix::zeros(f, self.rows * o.rows, self.cols * o.cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let c = self.get(a, b);
                if c == 0 {
                    continue;
                }
                for i in 0..o.rows {
                    for j in 0..o.cols {
                        out.set(a * o.rows + i, b * o.cols + j, f.mul(c, o.get(i, j)));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot nonzero");
            for i in r + 1..self.rows {
                let factor = f.mul(self.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot nonzero");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(GAUSSIAN_PRIME));
        assert!(!is_prime_u64(DEFAULT_PRIME - 2));
        assert!(PrimeField::new(15).is_err());
    }

    #[test]
    fn gaussian_reduction_is_a_homomorphism() {
        let f = PrimeField::new(GAUSSIAN_PRIME).unwrap();
        let a = Scalar::from_gaussian(3, 7) / Scalar::from_int(5);
        let b = Scalar::from_gaussian(-2, 1);
        let ra = f.reduce(&a).unwrap();
        let rb = f.reduce(&b).unwrap();
        assert_eq!(f.reduce(&(&a * &b)).unwrap(), f.mul(ra, rb));
        assert_eq!(f.reduce(&(&a + &b)).unwrap(), f.add(ra, rb));
        assert_eq!(f.reduce(&Scalar::from_int(-1)).unwrap(), f.mul(f.reduce(&Scalar::i()).unwrap(), f.reduce(&Scalar::i()).unwrap()));
        let real_only = PrimeField::new(DEFAULT_PRIME).unwrap();
        assert!(real_only.reduce(&Scalar::i()).is_none());
    }

    #[test]
    fn determinant_matches_exact() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let m = DenseMatrix::from_ints(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let exact = m.det();
        let r = f.reduce_matrix(&m).unwrap();
        assert_eq!(r.det(), f.reduce(&exact).unwrap());
        assert_eq!(r.rank(), 3);
    }
}
