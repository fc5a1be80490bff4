//! Unital algebras generated by matrices, commutants and invariant subspaces.

use serde::Serialize;

use crate::linalg::{nullspace_filtered, DenseMatrix, Echelon, ModEchelon, ModMatrix, PrimeField, Scalar, GAUSSIAN_PRIME};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraClosure {
    pub generators: Vec<DenseMatrix>,
    pub basis: Vec<DenseMatrix>,
    pub dimension: usize,
}

fn size_of(gens: &[DenseMatrix], d: Option<usize>) -> usize {
    d.or_else(|| gens.first().map(DenseMatrix::rows)).unwrap_or(1)
}

/// Basis of the unital algebra generated by `generators`, grown from `I` by
/// right multiplication with the generators until the span is stable.
pub fn algebra_closure(generators: &[DenseMatrix]) -> AlgebraClosure {
    algebra_closure_of_size(generators, size_of(generators, None))
}

/// As [`algebra_closure`], with the matrix size given for an empty list.
pub fn algebra_closure_of_size(generators: &[DenseMatrix], d: usize) -> AlgebraClosure {
    let mut ech = Echelon::new();
    let mut basis = vec![DenseMatrix::identity(d)];
    ech.insert(&basis[0].vectorize());
    let mut k = 0;
    while k < basis.len() && basis.len() < d * d {
        for g in generators {
            let m = &basis[k] * g;
            if ech.insert(&m.vectorize()) {
                basis.push(m);
            }
        }
        k += 1;
    }
    AlgebraClosure {
        generators: generators.to_vec(),
        dimension: basis.len(),
        basis,
    }
}

/// Words spanning the closure modulo a large prime: each entry is
/// `(parent, generator)` with `parent` an earlier index, index 0 being `I`.
/// The modular dimension never exceeds the rational one, so reaching `d²`
/// proves the algebra is all of `M_d`.
pub(crate) fn closure_words_mod_p(generators: &[DenseMatrix], d: usize) -> Option<Vec<(usize, usize)>> {
    let field = PrimeField::new(GAUSSIAN_PRIME).expect("prime");
    let gens: Vec<ModMatrix> = generators.iter().map(|g| field.reduce_matrix(g)).collect::<Option<_>>()?;
    let flat = |m: &ModMatrix| -> Vec<u64> { (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).collect() };
    let mut ech = ModEchelon::new(field);
    let mut elems = vec![ModMatrix::identity(field, d)];
    let mut words = vec![(0, usize::MAX)];
    ech.insert(&flat(&elems[0]));
    let mut k = 0;
    while k < elems.len() && elems.len() < d * d {
        for (gi, g) in gens.iter().enumerate() {
            let m = elems[k].mul(g);
            if ech.insert(&flat(&m)) {
                elems.push(m);
                words.push((k, gi));
            }
        }
        k += 1;
    }
    Some(words)
}

/// Exact matrices of the words from [`closure_words_mod_p`].
pub(crate) fn realize_words(generators: &[DenseMatrix], d: usize, words: &[(usize, usize)]) -> Vec<DenseMatrix> {
    let mut out: Vec<DenseMatrix> = Vec::with_capacity(words.len());
    for (k, &(parent, g)) in words.iter().enumerate() {
        if k == 0 {
            out.push(DenseMatrix::identity(d));
        } else {
            let m = &out[parent] * &generators[g];
            out.push(m);
        }
    }
    out
}

/// Basis of `{T : T·A = A·T for every generator}`.
pub fn commutant(generators: &[DenseMatrix], d: usize) -> Vec<DenseMatrix> {
    if generators.is_empty() {
        return (0..d * d).map(|k| DenseMatrix::unit(d, d, k / d, k % d)).collect();
    }
    let mut rows = Vec::new();
    for a in generators {
        for i in 0..d {
            for j in 0..d {
                // (T·A − A·T)_{ij} as a linear form in the entries of T
                let mut row = vec![Scalar::zero(); d * d];
                for c in 0..d {
                    row[i * d + c] += &a[(c, j)];
                    row[c * d + j] -= &a[(i, c)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return commutant(&[], d);
    }
    nullspace_filtered(&DenseMatrix::from_rows(rows))
        .into_iter()
        .map(|v| DenseMatrix::from_vec(d, d, v))
        .collect()
}

/// Smallest subspace containing `vectors` and invariant under `generators`.
pub fn spin(vectors: &[Vec<Scalar>], generators: &[DenseMatrix]) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    let mut k = 0;
    while k < ech.dim() {
        let v = ech.basis()[k].clone();
        for g in generators {
            let w = g.apply(&v);
            ech.insert(&w);
        }
        k += 1;
    }
    ech.basis().to_vec()
}

/// `A·V ⊆ V` for every generator, checked exactly.
pub fn is_invariant(subspace: &[Vec<Scalar>], generators: &[DenseMatrix]) -> bool {
    let mut ech = Echelon::new();
    for v in subspace {
        ech.insert(v);
    }
    generators.iter().all(|g| subspace.iter().all(|v| ech.contains(&g.apply(v))))
}

/// `{x : wᵀx = 0 for all w}`.
pub fn annihilator(vectors: &[Vec<Scalar>], d: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return (0..d).map(|k| unit_vector(d, k)).collect();
    }
    DenseMatrix::from_rows(vectors.to_vec()).nullspace()
}

pub(crate) fn unit_vector(d: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[k] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> DenseMatrix {
        DenseMatrix::unit(2, 2, i, j)
    }

    #[test]
    fn closure_examples() {
        assert_eq!(algebra_closure(&[e(0, 0), e(1, 1)]).dimension, 2);
        assert_eq!(algebra_closure(&[e(0, 1), e(1, 0)]).dimension, 4);
        assert_eq!(algebra_closure_of_size(&[], 3).dimension, 1);
        assert_eq!(algebra_closure(&[e(0, 1)]).dimension, 2);
    }

    #[test]
    fn modular_words_match_exact_dimension() {
        let gens = [e(0, 1), e(1, 0)];
        let w = closure_words_mod_p(&gens, 2).unwrap();
        assert_eq!(w.len(), 4);
        let basis = realize_words(&gens, 2, &w);
        assert_eq!(basis[1], e(0, 1));
    }

    #[test]
    fn commutant_of_rotation() {
        let j = DenseMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let c = commutant(&[j.clone()], 2);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|t| &(t * &j) == &(&j * t)));
    }

    #[test]
    fn spin_and_invariance() {
        let v = spin(&[unit_vector(2, 0)], &[e(0, 1)]);
        assert_eq!(v.len(), 1);
        assert!(is_invariant(&v, &[e(0, 1)]));
        assert_eq!(spin(&[unit_vector(2, 1)], &[e(0, 1)]).len(), 2);
        assert_eq!(annihilator(&v, 2), vec![unit_vector(2, 1)]);
    }
}
