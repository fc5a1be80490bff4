//! Incremental echelon bases, modular-guided nullspaces and minimal polynomials.

use super::matrix::DenseMatrix;
use super::modp::{PrimeField, GAUSSIAN_PRIME};
use super::scalar::Scalar;
use super::unipoly::UniPoly;

/// Row-echelon basis grown one vector at a time. Each stored row has a unit
/// pivot and vanishes at the pivots of earlier rows.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
    originals: Vec<Vec<Scalar>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Inserted vectors that were independent, in insertion order.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.originals
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &(&c * b);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, r));
        self.originals.push(v.to_vec());
        true
    }
}

/// [`Echelon`] over `F_p`.
#[derive(Debug, Clone)]
pub struct ModEchelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(field: PrimeField) -> Self {
        ModEchelon { field, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(row) {
                if b != 0 {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, v));
        true
    }
}

/// Exact nullspace of `m`. Rows independent modulo a large prime are
/// selected first; the nullspace of that subsystem is accepted once it is
/// checked against every row, else the full system is solved.
pub fn nullspace_filtered(m: &DenseMatrix) -> Vec<Vec<Scalar>> {
    let field = PrimeField::new(GAUSSIAN_PRIME).expect("prime");
    let Some(mm) = field.reduce_matrix(m) else {
        return m.nullspace();
    };
    let mut ech = ModEchelon::new(field);
    let mut keep = Vec::new();
    for r in 0..m.rows() {
        let row: Vec<u64> = (0..m.cols()).map(|c| mm.get(r, c)).collect();
        if ech.insert(&row) {
            keep.push(r);
            if keep.len() == m.cols() {
                break;
            }
        }
    }
    if keep.len() == m.rows() {
        return m.nullspace();
    }
    let sub = DenseMatrix::from_rows(keep.iter().map(|&r| m.row(r).to_vec()).collect());
    let sub = if keep.is_empty() { DenseMatrix::zeros(0, m.cols()) } else { sub };
    let ns = sub.nullspace();
    if ns.iter().all(|v| m.apply(v).iter().all(Scalar::is_zero)) {
        ns
    } else {
        m.nullspace()
    }
}

/// Monic minimal polynomial of a square matrix, from the first linear
/// dependency among `I, T, T², …`.
pub fn minimal_polynomial(t: &DenseMatrix) -> UniPoly {
    let d = t.rows();
    let mut powers = vec![DenseMatrix::identity(d)];
    loop {
        let k = powers.len();
        let next = &powers[k - 1] * t;
        // solve Σ_{i<k} c_i T^i = T^k
        let cols: Vec<DenseMatrix> = powers.iter().map(|p| DenseMatrix::column_vector(p.vectorize())).collect();
        let mut system = DenseMatrix::hstack(&cols);
        system = DenseMatrix::hstack(&[system, DenseMatrix::column_vector(next.vectorize())]);
        if let Some(v) = system.nullspace().into_iter().find(|v| !v[k].is_zero()) {
            let lead = v[k].clone();
            let coeffs = v.iter().map(|c| c / &lead).collect();
            return UniPoly::new(coeffs);
        }
        powers.push(next);
    }
}

/// Maximal independent subset of `vectors`, in order.
pub fn independent_columns(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.basis().to_vec()
}
