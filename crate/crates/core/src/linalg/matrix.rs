//! Dense matrices over `ℚ(i)` with exact elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;

fn bareiss_int(n: usize, mut m: Vec<BigInt>) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn bareiss_gaussian(n: usize, mut re: Vec<BigInt>, mut im: Vec<BigInt>) -> (BigInt, BigInt) {
    let mut negate = false;
    let (mut pr, mut pi) = (BigInt::one(), BigInt::zero());
    for k in 0..n - 1 {
        let kk = k * n + k;
        if re[kk].is_zero() && im[kk].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !(re[i * n + k].is_zero() && im[i * n + k].is_zero())) else {
                return (BigInt::zero(), BigInt::zero());
            };
            for j in 0..n {
                re.swap(p * n + j, k * n + j);
                im.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        let norm = &pr * &pr + &pi * &pi;
        for i in k + 1..n {
            for j in k + 1..n {
                let (ij, ik, kj) = (i * n + j, i * n + k, k * n + j);
                let a = &re[ij] * &re[kk] - &im[ij] * &im[kk] - (&re[ik] * &re[kj] - &im[ik] * &im[kj]);
                let b = &re[ij] * &im[kk] + &im[ij] * &re[kk] - (&re[ik] * &im[kj] + &im[ik] * &re[kj]);
                // exact division by the previous pivot
                re[ij] = (&a * &pr + &b * &pi) / &norm;
                im[ij] = (&b * &pr - &a * &pi) / &norm;
            }
        }
        pr = re[kk].clone();
        pi = im[kk].clone();
    }
    let (dr, di) = (re[n * n - 1].clone(), im[n * n - 1].clone());
    if negate {
        (-dr, -di)
    } else {
        (dr, di)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: DenseMatrix,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    /// `c·Iₙ`.
    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = c.clone();
        }
        m
    }

    /// The matrix unit `E_{ij}` of size `rows × cols`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn column_vector(v: Vec<Scalar>) -> Self {
        let n = v.len();
        DenseMatrix::from_vec(n, 1, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|z| z * c)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|k| self[(k, k)].clone())
            .sum()
    }

    /// `self ⊗ o` with `self` as the outer factor.
    pub fn kron(&self, o: &DenseMatrix) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let c = &self[(a, b)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..o.rows {
                    for j in 0..o.cols {
                        out[(a * o.rows + i, b * o.cols + j)] = c * &o[(i, j)];
                    }
                }
            }
        }
        out
    }

    /// Block diagonal `self ⊕ o`.
    pub fn direct_sum(&self, o: &DenseMatrix) -> Self {
        let mut out = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, o);
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &DenseMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn hstack(blocks: &[DenseMatrix]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[DenseMatrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    /// Select columns by index, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m[(r, c)].inv().expect("pivot nonzero");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &factor * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Exact basis of the right kernel `{v : Mv = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Basis of the left kernel `{u : uᵀM = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Scalar>> {
        self.transpose().nullspace()
    }

    /// Basis of the column space, as the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        self.rref()
            .pivots
            .iter()
            .map(|&c| self.column(c))
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        // scale each row to Gaussian integers, then fraction-free elimination
        let mut scale = BigInt::one();
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for r in 0..n {
            let row = &self.data[r * n..(r + 1) * n];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
            for x in row {
                re.push((x.re() * &l).to_integer());
                im.push((x.im() * &l).to_integer());
            }
            scale *= l;
        }
        let (dr, di) = if im.iter().all(Zero::is_zero) {
            (bareiss_int(n, re), BigInt::zero())
        } else {
            bareiss_gaussian(n, re, im)
        };
        let s = BigRational::from_integer(scale);
        Scalar::new(BigRational::from_integer(dr) / &s, BigRational::from_integer(di) / s)
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = DenseMatrix::hstack(&[self.clone(), DenseMatrix::identity(n)]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Flatten row-major into a vector of length `rows·cols`.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn pow(&self, e: u32) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, o: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = DenseMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, o: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, o: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in difference");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;
    fn neg(self) -> DenseMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Row-major nested arrays of scalar strings.
impl Serialize for DenseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DenseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(DenseMatrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_matrix, seeded};

    fn cofactor_det(m: &DenseMatrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return Scalar::one();
        }
        let mut acc = Scalar::zero();
        for j in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = DenseMatrix::from_vec(
                n - 1,
                n - 1,
                (1..n).flat_map(|r| keep.iter().map(move |&c| (r, c))).map(|(r, c)| m[(r, c)].clone()).collect(),
            );
            let t = &m[(0, j)] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn fraction_free_det_matches_cofactor_expansion() {
        let mut rng = seeded(11);
        for n in 1..=5 {
            for complex in [false, true] {
                let mut m = random_matrix(&mut rng, n, n, 3, complex);
                m[(0, 0)] = Scalar::from_ratio(2, 3);
                if n > 1 {
                    m[(1, 0)] = Scalar::zero();
                    m[(0, 1)] = &Scalar::i() * &Scalar::from_ratio(-1, 5);
                }
                assert_eq!(m.det(), cofactor_det(&m));
            }
        }
    }

    #[test]
    fn nullspace_examples() {
        assert!(DenseMatrix::identity(3).nullspace().is_empty());
        assert_eq!(DenseMatrix::zeros(2, 3).nullspace().len(), 3);
        let m = DenseMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], -&ns[0][1]);
        assert!(m.apply(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = DenseMatrix::from_ints(&[&[0, 2, 1], &[3, -1, 4], &[1, 0, 0]]);
        assert_eq!(m.det(), Scalar::from_int(9));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let singular = DenseMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(singular.det().is_zero());
        assert!(singular.inverse().is_none());
        assert_eq!(DenseMatrix::zeros(0, 0).det(), Scalar::one());
    }

    #[test]
    fn kron_matches_block_formula() {
        let a = DenseMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = DenseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], Scalar::from_int(1));
        assert_eq!(k[(2, 3)], Scalar::from_int(4));
        assert_eq!(k.det(), a.det().pow(2) * b.det().pow(2));
    }
}
