//! Indecomposability of monic pencils and composition series of their
//! natural modules.

use serde::Serialize;

use super::closure::{
    annihilator, closure_words_mod_p, commutant, is_invariant, realize_words, spin, unit_vector,
};
use crate::error::{Error, Result};
use crate::linalg::random::seeded;
use crate::linalg::{minimal_polynomial, DenseMatrix, Echelon, Scalar, UniPoly};
use crate::linearize::LinearPencil;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IndecomposableVerdict {
    /// The coefficients generate all of `M_d`.
    Yes { dimension: usize },
    /// A proper nonzero subspace invariant under every coefficient.
    No { subspace: Vec<Vec<Scalar>> },
    /// No invariant subspace over the base field was found; the commutant
    /// contains an element with the given minimal polynomial.
    NeedsFieldExtension { minimal_polynomial: UniPoly, commutant_dimension: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IndecomposableOptions {
    pub seed: u64,
    /// Look for subspaces over `ℚ` only.
    pub real_only: bool,
}

pub fn is_indecomposable(l: &LinearPencil) -> Result<IndecomposableVerdict> {
    is_indecomposable_with(l, IndecomposableOptions::default())
}

pub fn is_indecomposable_with(l: &LinearPencil, opts: IndecomposableOptions) -> Result<IndecomposableVerdict> {
    if !l.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = l.size();
    let gens: Vec<DenseMatrix> = l.linear_coefficients().iter().filter(|a| !a.is_zero()).cloned().collect();
    Ok(decide(&gens, d, opts))
}

fn decide(gens: &[DenseMatrix], d: usize, opts: IndecomposableOptions) -> IndecomposableVerdict {
    if d <= 1 {
        return IndecomposableVerdict::Yes { dimension: d * d };
    }
    let words = closure_words_mod_p(gens, d);
    if let Some(w) = &words {
        if w.len() == d * d {
            return IndecomposableVerdict::Yes { dimension: d * d };
        }
    }
    if let Some(v) = eigen_search(gens, d, opts) {
        return IndecomposableVerdict::No { subspace: v };
    }
    // exact algebra basis: the modular words are independent over ℚ(i)
    let basis = match &words {
        Some(w) => realize_words(gens, d, w),
        None => super::closure::algebra_closure_of_size(gens, d).basis,
    };
    if let Some(v) = radical_subspace(&basis, gens, d) {
        return IndecomposableVerdict::No { subspace: v };
    }
    let comm = commutant(gens, d);
    if comm.len() <= 1 {
        let exact = super::closure::algebra_closure_of_size(gens, d);
        if exact.dimension == d * d {
            return IndecomposableVerdict::Yes { dimension: d * d };
        }
    }
    let mut rng = seeded(opts.seed ^ 0x636f_6d6d);
    let nonscalar: Vec<&DenseMatrix> = comm.iter().filter(|t| !is_scalar(t)).collect();
    let mut candidates: Vec<DenseMatrix> = nonscalar.iter().map(|t| (*t).clone()).collect();
    for _ in 0..4 {
        if comm.len() < 2 {
            break;
        }
        let mut t = DenseMatrix::zeros(d, d);
        for b in &comm {
            t = &t + &b.scale(&Scalar::from_int(rng.gen_range(-5..=5)));
        }
        candidates.push(t);
    }
    let mut best: Option<Vec<Vec<Scalar>>> = None;
    for t in &candidates {
        if is_scalar(t) {
            continue;
        }
        for lambda in roots(&minimal_polynomial(t), opts.real_only) {
            let k = (t - &DenseMatrix::scalar(d, lambda)).nullspace();
            if !k.is_empty() && k.len() < d && is_invariant(&k, gens) && best.as_ref().is_none_or(|b| k.len() < b.len()) {
                best = Some(k);
            }
        }
        if best.is_some() {
            break;
        }
    }
    if let Some(v) = best {
        return IndecomposableVerdict::No { subspace: v };
    }
    let minimal_polynomial = nonscalar.first().map_or_else(UniPoly::one, |t| minimal_polynomial(t));
    IndecomposableVerdict::NeedsFieldExtension { minimal_polynomial, commutant_dimension: comm.len() }
}

fn is_scalar(t: &DenseMatrix) -> bool {
    let c = t[(0, 0)].clone();
    *t == DenseMatrix::scalar(t.rows(), c)
}

fn roots(p: &UniPoly, real_only: bool) -> Vec<Scalar> {
    let mut r = p.gaussian_rational_roots();
    if real_only {
        r.retain(Scalar::is_real);
    }
    r
}

/// Proper invariant subspaces from eigenvectors of algebra elements: right
/// eigenvectors are spun under the generators, left ones under their
/// transposes, whose invariant subspaces annihilate invariant subspaces.
fn eigen_search(gens: &[DenseMatrix], d: usize, opts: IndecomposableOptions) -> Option<Vec<Vec<Scalar>>> {
    let transposed: Vec<DenseMatrix> = gens.iter().map(DenseMatrix::transpose).collect();
    let mut rng = seeded(opts.seed ^ 0x6569_6765);
    let mut elements: Vec<DenseMatrix> = gens.to_vec();
    for _ in 0..4 {
        let mut a = DenseMatrix::zeros(d, d);
        for g in gens {
            a = &a + &g.scale(&Scalar::from_int(rng.gen_range(-3..=3)));
        }
        if gens.len() >= 2 {
            let i = rng.gen_range(0..gens.len());
            let j = rng.gen_range(0..gens.len());
            a = &a + &(&gens[i] * &gens[j]);
        }
        elements.push(a);
    }
    for a in &elements {
        let mut best: Option<Vec<Vec<Scalar>>> = None;
        for lambda in roots(&minimal_polynomial(a), opts.real_only) {
            let shifted = a - &DenseMatrix::scalar(d, lambda);
            for v in shifted.nullspace() {
                let w = spin(&[v], gens);
                if w.len() < d && best.as_ref().is_none_or(|b| w.len() < b.len()) {
                    best = Some(w);
                }
            }
            for u in shifted.left_nullspace() {
                let w = spin(&[u], &transposed);
                if w.len() < d {
                    let v = annihilator(&w, d);
                    if best.as_ref().is_none_or(|b| v.len() < b.len()) {
                        best = Some(v);
                    }
                }
            }
        }
        if let Some(v) = best {
            debug_assert!(is_invariant(&v, gens));
            return Some(v);
        }
    }
    None
}

/// `J·F^d` for the radical `J` of the trace form, which is a proper
/// invariant subspace whenever `J ≠ 0`.
fn radical_subspace(basis: &[DenseMatrix], gens: &[DenseMatrix], d: usize) -> Option<Vec<Vec<Scalar>>> {
    let m = basis.len();
    let transposes: Vec<DenseMatrix> = basis.iter().map(DenseMatrix::transpose).collect();
    let mut gram = DenseMatrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            // tr(B_a·B_b) = Σ (B_a)_{ij} (B_b)_{ji}
            let mut acc = Scalar::zero();
            for (x, y) in basis[a].entries().iter().zip(transposes[b].entries()) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            gram[(a, b)] = acc.clone();
            gram[(b, a)] = acc;
        }
    }
    let radical = gram.nullspace();
    if radical.is_empty() {
        return None;
    }
    let mut ech = Echelon::new();
    for coeffs in &radical {
        let mut j = DenseMatrix::zeros(d, d);
        for (c, b) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                j = &j + &b.scale(c);
            }
        }
        for c in 0..d {
            ech.insert(&j.column(c));
        }
    }
    let v = ech.basis().to_vec();
    (!v.is_empty() && v.len() < d && is_invariant(&v, gens)).then_some(v)
}

/// Basis change `S = [V | complement]` with `S⁻¹·A·S` block upper
/// triangular for every coefficient; returns `S` and the two diagonal blocks.
pub fn block_triangularize(l: &LinearPencil, subspace: &[Vec<Scalar>]) -> (DenseMatrix, LinearPencil, LinearPencil) {
    let d = l.size();
    let mut ech = Echelon::new();
    for v in subspace {
        ech.insert(v);
    }
    let r = ech.dim();
    for k in 0..d {
        ech.insert(&unit_vector(d, k));
    }
    let cols: Vec<DenseMatrix> = ech.basis().iter().map(|v| DenseMatrix::column_vector(v.clone())).collect();
    let s = DenseMatrix::hstack(&cols);
    let inv = s.inverse().expect("completed basis is invertible");
    let t = l.transform(&inv, &s);
    (s, t.principal_block(0, r), t.principal_block(r, d - r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BlockStatus {
    Indecomposable,
    NeedsFieldExtension { minimal_polynomial: UniPoly },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionFactor {
    pub pencil: LinearPencil,
    #[serde(flatten)]
    pub status: BlockStatus,
}

/// Diagonal blocks of a composition series of the natural module of a
/// monic pencil, top-left first.
pub fn composition_series(l: &LinearPencil, opts: IndecomposableOptions) -> Result<Vec<CompositionFactor>> {
    if !l.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::new();
    series_into(l, opts, &mut out);
    Ok(out)
}

fn series_into(l: &LinearPencil, opts: IndecomposableOptions, out: &mut Vec<CompositionFactor>) {
    if l.size() == 0 {
        return;
    }
    match is_indecomposable_with(l, opts).expect("monic") {
        IndecomposableVerdict::Yes { .. } => out.push(CompositionFactor { pencil: l.clone(), status: BlockStatus::Indecomposable }),
        IndecomposableVerdict::No { subspace } => {
            let (_, top, bottom) = block_triangularize(l, &subspace);
            series_into(&top, opts, out);
            series_into(&bottom, opts, out);
        }
        IndecomposableVerdict::NeedsFieldExtension { minimal_polynomial, .. } => out.push(CompositionFactor {
            pencil: l.clone(),
            status: BlockStatus::NeedsFieldExtension { minimal_polynomial },
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monic(gens: Vec<DenseMatrix>) -> LinearPencil {
        let d = gens[0].rows();
        LinearPencil::analytic(DenseMatrix::identity(d), gens).unwrap()
    }

    #[test]
    fn spec_examples() {
        let e12 = DenseMatrix::unit(2, 2, 0, 1);
        let e21 = DenseMatrix::unit(2, 2, 1, 0);
        match is_indecomposable(&monic(vec![e12.clone()])).unwrap() {
            IndecomposableVerdict::No { subspace } => assert_eq!(subspace, vec![unit_vector(2, 0)]),
            v => panic!("{v:?}"),
        }
        assert_eq!(is_indecomposable(&monic(vec![e12, e21])).unwrap(), IndecomposableVerdict::Yes { dimension: 4 });
        let rot = monic(vec![DenseMatrix::from_ints(&[&[0, 1], &[-1, 0]])]);
        match is_indecomposable(&rot).unwrap() {
            IndecomposableVerdict::No { subspace } => {
                assert_eq!(subspace.len(), 1);
                assert!(is_invariant(&subspace, rot.linear_coefficients()));
            }
            v => panic!("{v:?}"),
        }
        let real = IndecomposableOptions { real_only: true, ..Default::default() };
        assert_eq!(
            is_indecomposable_with(&rot, real).unwrap(),
            IndecomposableVerdict::NeedsFieldExtension { minimal_polynomial: UniPoly::from_ints(&[1, 0, 1]), commutant_dimension: 2 }
        );
        let not_monic = LinearPencil::analytic(DenseMatrix::zeros(2, 2), vec![DenseMatrix::identity(2)]).unwrap();
        assert_eq!(is_indecomposable(&not_monic), Err(Error::NotMonic));
    }

    #[test]
    fn radical_route_for_nilpotent_algebra() {
        // strictly upper triangular 3×3 generators without rational eigen shortcuts
        let a = DenseMatrix::from_ints(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        let b = DenseMatrix::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let basis = super::super::closure::algebra_closure(&[a.clone(), b.clone()]).basis;
        let v = radical_subspace(&basis, &[a, b], 3).unwrap();
        assert!(v.len() < 3 && !v.is_empty());
    }

    #[test]
    fn composition_of_triangular_pencil() {
        let a = DenseMatrix::from_ints(&[&[1, 5, 2], &[0, 2, 7], &[0, 0, 3]]);
        let series = composition_series(&monic(vec![a]), IndecomposableOptions::default()).unwrap();
        assert_eq!(series.len(), 3);
        assert!(series.iter().all(|f| f.status == BlockStatus::Indecomposable && f.pencil.size() == 1));
    }
}
