//! Free-locus containment `𝒵(f) ⊆ 𝒵(h)`: exact refutations along random
//! lines and certified block matching of atomic decompositions.

use serde::Serialize;

use super::atom::{decomposition_at, AtomicDecomposition};
use super::equiv::{pencil_equiv, verify_equivalence, EquivalenceWitness};
use super::indecomposable::BlockStatus;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::{common_regular_point, det_along_line, evaluate, AffineLine, EvalMode, MatrixTuple};
use crate::freealg::{Context, MatrixPoly};
use crate::linalg::random::seeded;
use crate::linalg::{DenseMatrix, Scalar, UniPoly};
use crate::linearize::{epic_linearization, LinearPencil};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ContainMode {
    #[default]
    MonteCarlo,
    Certified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContainPath {
    MonteCarlo,
    Certified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainmentStatus {
    Proved,
    Refuted,
    ConsistentUpTo,
}

/// A point of `𝒵(f) ∖ 𝒵(h)`, or a line on which every root of `factor` is one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationWitness {
    Point { point: MatrixTuple },
    Line { line: AffineLine, factor: UniPoly },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockMatch {
    pub f_block: usize,
    pub h_block: usize,
    pub witness: EquivalenceWitness,
}

/// Every composition factor of `f^X` is equivalent to one of `h^X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentCertificate {
    pub point: MatrixTuple,
    pub f_blocks: Vec<LinearPencil>,
    pub h_blocks: Vec<LinearPencil>,
    pub matches: Vec<BlockMatch>,
}

impl ContainmentCertificate {
    /// Exact re-verification of every block match.
    pub fn verify(&self) -> bool {
        (0..self.f_blocks.len()).all(|i| self.matches.iter().any(|m| m.f_block == i))
            && self.matches.iter().all(|m| {
                m.f_block < self.f_blocks.len()
                    && m.h_block < self.h_blocks.len()
                    && verify_equivalence(&self.f_blocks[m.f_block], &self.h_blocks[m.h_block], &m.witness)
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ContainmentVerdict {
    Proved { path: ContainPath, certificate: ContainmentCertificate },
    Refuted { path: ContainPath, witness: RefutationWitness },
    ConsistentUpTo { path: ContainPath, sizes: Vec<usize>, lines_per_size: usize, failure_bound: f64, note: String },
}

impl ContainmentVerdict {
    pub fn status(&self) -> ContainmentStatus {
        match self {
            ContainmentVerdict::Proved { .. } => ContainmentStatus::Proved,
            ContainmentVerdict::Refuted { .. } => ContainmentStatus::Refuted,
            ContainmentVerdict::ConsistentUpTo { .. } => ContainmentStatus::ConsistentUpTo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContainOptions {
    pub budget: Budget,
    pub mode: ContainMode,
}

fn joint(f: &MatrixPoly, h: &MatrixPoly) -> (MatrixPoly, MatrixPoly) {
    let a = f.alphabet().join(h.alphabet());
    (f.clone().with_alphabet(a), h.clone().with_alphabet(a))
}

fn sampling(f: &MatrixPoly) -> (bool, EvalMode) {
    if f.alphabet().context >= Context::Involutive {
        (true, EvalMode::Free)
    } else {
        (false, EvalMode::Star)
    }
}

/// Exact re-verification of a refutation.
pub fn verify_refutation(f: &MatrixPoly, h: &MatrixPoly, w: &RefutationWitness) -> Result<bool> {
    let (f, h) = joint(f, h);
    match w {
        RefutationWitness::Point { point } => {
            Ok(evaluate(&f, point)?.det().is_zero() && !evaluate(&h, point)?.det().is_zero())
        }
        RefutationWitness::Line { line, factor } => {
            let p = det_along_line(&f, line)?;
            let q = det_along_line(&h, line)?;
            Ok(factor.degree().unwrap_or(0) >= 1
                && !p.is_zero()
                && factor.divides(&p)
                && factor.gcd(&q).degree() == Some(0))
        }
    }
}

/// Deterministic points of size 1 with entries in `{0, 1}`, then `{−1, 0, 1}`.
pub(crate) fn small_point_probe(f: &MatrixPoly, h: &MatrixPoly) -> Result<Option<MatrixTuple>> {
    let g = f.alphabet().nvars as usize;
    for (values, cap) in [(&[0i64, 1][..], 10usize), (&[-1, 0, 1][..], 6)] {
        if g > cap {
            continue;
        }
        let total = values.len().pow(g as u32);
        for code in 0..total {
            let mut c = code;
            let mut x = vec![DenseMatrix::zeros(1, 1); g];
            for k in (0..g).rev() {
                x[k] = DenseMatrix::scalar(1, Scalar::from_int(values[c % values.len()]));
                c /= values.len();
            }
            let pt = MatrixTuple::star(x);
            if evaluate(f, &pt)?.det().is_zero() && !evaluate(h, &pt)?.det().is_zero() {
                return Ok(Some(pt));
            }
        }
    }
    Ok(None)
}

/// Refutation search along random lines: on a line with `p = det f` and
/// `q = det h`, every root of `sqfree(p)/gcd(sqfree(p), q)` lies in
/// `𝒵(f) ∖ 𝒵(h)`.
pub fn montecarlo_containment(f: &MatrixPoly, h: &MatrixPoly, budget: &Budget, note: &str) -> Result<ContainmentVerdict> {
    let (f, h) = joint(f, h);
    let refuted = |witness| Ok(ContainmentVerdict::Refuted { path: ContainPath::MonteCarlo, witness });
    if let Some(point) = small_point_probe(&f, &h)? {
        return refuted(RefutationWitness::Point { point });
    }
    let g = f.alphabet().nvars as usize;
    let (complex, mode) = sampling(&f);
    let mut rng = seeded(budget.seed ^ 0x636f_6e74);
    let sizes: Vec<usize> = (1..=budget.n_max).collect();
    for &n in &sizes {
        for _ in 0..budget.trials {
            let line = AffineLine::random(&mut rng, g, n, budget.bound, complex, mode);
            let p = det_along_line(&f, &line)?;
            let q = det_along_line(&h, &line)?;
            if p.is_zero() {
                if q.is_zero() {
                    continue;
                }
                let d = q.degree().unwrap_or(0) as i64;
                let t = (0..=d + 1).map(Scalar::from_int).find(|t| !q.eval(t).is_zero()).expect("nonzero polynomial");
                return refuted(RefutationWitness::Point { point: line.at(&t) });
            }
            let sp = p.squarefree_part()?;
            let r = sp.exact_div(&sp.gcd(&q)).expect("gcd divides");
            if r.degree().unwrap_or(0) == 0 {
                continue;
            }
            if let Some(t) = r.gaussian_rational_roots().into_iter().next() {
                return refuted(RefutationWitness::Point { point: line.at(&t) });
            }
            return refuted(RefutationWitness::Line { line, factor: r });
        }
    }
    let deg = f.degree().unwrap_or(0).max(h.degree().unwrap_or(0)).max(1);
    let n_max = *sizes.last().unwrap_or(&1);
    let d = (f.rows().max(h.rows()) * n_max * deg) as f64;
    let failure_bound = (d / budget.sample_space()).min(1.0).powi(budget.trials as i32);
    Ok(ContainmentVerdict::ConsistentUpTo {
        path: ContainPath::MonteCarlo,
        sizes,
        lines_per_size: budget.trials,
        failure_bound,
        note: if note.is_empty() { "no refuting line found".into() } else { note.to_string() },
    })
}

enum Certified {
    Proved(ContainmentCertificate),
    Failed(String),
}

fn certified(f: &MatrixPoly, h: &MatrixPoly, budget: &Budget) -> Result<Certified> {
    let (f, h) = joint(f, h);
    let (rf, rh) = match (epic_linearization(&f), epic_linearization(&h)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(Error::NotFull), _) | (_, Err(Error::NotFull)) => return Ok(Certified::Failed("input is not full".into())),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let g = f.alphabet().nvars as usize;
    let Some(x) = common_regular_point(&[&f, &h], g, budget, 0x6365_7274)? else {
        return Ok(Certified::Failed("no common regular point within budget".into()));
    };
    let df: AtomicDecomposition = decomposition_at(&rf, &x, budget.seed)?;
    let dh: AtomicDecomposition = decomposition_at(&rh, &x, budget.seed)?;
    if !df.complete {
        return Ok(Certified::Failed("a block of f needs a field extension".into()));
    }
    let f_blocks: Vec<LinearPencil> = df.blocks.iter().map(|b| b.pencil.clone()).collect();
    let h_blocks: Vec<LinearPencil> = dh.blocks.iter().map(|b| b.pencil.clone()).collect();
    let mut matches = Vec::new();
    for (i, fb) in f_blocks.iter().enumerate() {
        let mut found = None;
        for (j, hb) in h_blocks.iter().enumerate() {
            if hb.size() != fb.size() || dh.blocks[j].status != BlockStatus::Indecomposable {
                continue;
            }
            if let Some(w) = pencil_equiv(fb, hb, budget.seed)? {
                found = Some(BlockMatch { f_block: i, h_block: j, witness: w });
                break;
            }
        }
        match found {
            Some(m) => matches.push(m),
            None => return Ok(Certified::Failed(format!("block {i} of f matches no block of h"))),
        }
    }
    Ok(Certified::Proved(ContainmentCertificate { point: x, f_blocks, h_blocks, matches }))
}

/// Decides or tests `𝒵(f) ⊆ 𝒵(h)`. In certified mode a failed block match
/// falls back to the line search.
pub fn locus_contains(f: &MatrixPoly, h: &MatrixPoly, opts: &ContainOptions) -> Result<ContainmentVerdict> {
    let mut note = String::new();
    if opts.mode == ContainMode::Certified {
        match certified(f, h, &opts.budget)? {
            Certified::Proved(certificate) => {
                debug_assert!(certificate.verify());
                return Ok(ContainmentVerdict::Proved { path: ContainPath::Certified, certificate });
            }
            Certified::Failed(why) => note = format!("certified matching failed: {why}"),
        }
    }
    montecarlo_containment(f, h, &opts.budget, &note)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityVerdict {
    pub status: ContainmentStatus,
    pub forward: ContainmentVerdict,
    pub backward: ContainmentVerdict,
}

/// Containment in both directions.
pub fn locus_equal(f: &MatrixPoly, h: &MatrixPoly, opts: &ContainOptions) -> Result<EqualityVerdict> {
    let forward = locus_contains(f, h, opts)?;
    let backward = locus_contains(h, f, opts)?;
    let status = match (forward.status(), backward.status()) {
        (ContainmentStatus::Refuted, _) | (_, ContainmentStatus::Refuted) => ContainmentStatus::Refuted,
        (ContainmentStatus::Proved, ContainmentStatus::Proved) => ContainmentStatus::Proved,
        _ => ContainmentStatus::ConsistentUpTo,
    };
    Ok(EqualityVerdict { status, forward, backward })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionVerdict {
    pub status: ContainmentStatus,
    /// First `j` with `𝒵(f_j) ⊆ 𝒵(h)` proved or consistent.
    pub index: Option<usize>,
    pub verdicts: Vec<ContainmentVerdict>,
    /// `X¹ ⊕ X² ⊕ …` from individual point refutations; it lies in every
    /// `𝒵(f_j)` and outside `𝒵(h)`.
    pub joint_witness: Option<MatrixTuple>,
}

/// `⋂ 𝒵(f_j) ⊆ 𝒵(h)` holds iff some `𝒵(f_j) ⊆ 𝒵(h)`.
pub fn contain_intersection(fs: &[MatrixPoly], h: &MatrixPoly, opts: &ContainOptions) -> Result<IntersectionVerdict> {
    let alphabet = fs.iter().fold(h.alphabet(), |a, f| a.join(f.alphabet()));
    let h = h.clone().with_alphabet(alphabet);
    let mut verdicts = Vec::new();
    for (j, f) in fs.iter().enumerate() {
        let v = locus_contains(&f.clone().with_alphabet(alphabet), &h, opts)?;
        let status = v.status();
        verdicts.push(v);
        if status != ContainmentStatus::Refuted {
            return Ok(IntersectionVerdict { status, index: Some(j), verdicts, joint_witness: None });
        }
    }
    let mut joint: Option<MatrixTuple> = None;
    for v in &verdicts {
        let ContainmentVerdict::Refuted { witness: RefutationWitness::Point { point }, .. } = v else {
            joint = None;
            break;
        };
        joint = Some(match joint {
            None => point.clone(),
            Some(acc) => acc.direct_sum(point),
        });
    }
    Ok(IntersectionVerdict { status: ContainmentStatus::Refuted, index: None, verdicts, joint_witness: joint })
}

/// `det f_j(X) = 0` for every `j` and `det h(X) ≠ 0`.
pub fn verify_joint_witness(fs: &[MatrixPoly], h: &MatrixPoly, x: &MatrixTuple) -> Result<bool> {
    let alphabet = fs.iter().fold(h.alphabet(), |a, f| a.join(f.alphabet()));
    for f in fs {
        if !evaluate(&f.clone().with_alphabet(alphabet), x)?.det().is_zero() {
            return Ok(false);
        }
    }
    Ok(!evaluate(&h.clone().with_alphabet(alphabet), x)?.det().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::FreePoly;

    fn x(k: u32) -> MatrixPoly {
        MatrixPoly::from_free(&FreePoly::x(k))
    }

    fn opts(mode: ContainMode) -> ContainOptions {
        ContainOptions { budget: Budget { n_max: 3, trials: 10, ..Budget::with_seed(7) }, mode }
    }

    #[test]
    fn refutes_with_small_point() {
        let v = locus_contains(&x(0), &x(1), &opts(ContainMode::MonteCarlo)).unwrap();
        match &v {
            ContainmentVerdict::Refuted { witness: RefutationWitness::Point { point }, .. } => {
                assert_eq!(point.n, 1);
                assert_eq!(point.x, vec![DenseMatrix::from_ints(&[&[0]]), DenseMatrix::from_ints(&[&[1]])]);
                assert!(verify_refutation(&x(0), &x(1), &RefutationWitness::Point { point: point.clone() }).unwrap());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn factor_is_contained() {
        let prod = &x(0) * &x(1);
        let v = locus_contains(&x(0), &prod, &opts(ContainMode::Certified)).unwrap();
        match &v {
            ContainmentVerdict::Proved { certificate, .. } => assert!(certificate.verify()),
            v => panic!("{v:?}"),
        }
        let mc = locus_contains(&x(0), &prod, &opts(ContainMode::MonteCarlo)).unwrap();
        assert_eq!(mc.status(), ContainmentStatus::ConsistentUpTo);
    }

    #[test]
    fn commutator_times_unit_plus_x() {
        let c = &(&x(0) * &x(1)) - &(&x(1) * &x(0));
        let one = MatrixPoly::identity(1, c.alphabet());
        let h = &c * &(&one + &x(0));
        let v = locus_contains(&c, &h, &opts(ContainMode::Certified)).unwrap();
        assert_eq!(v.status(), ContainmentStatus::Proved);
        let back = locus_contains(&h, &c, &opts(ContainMode::Certified)).unwrap();
        assert_eq!(back.status(), ContainmentStatus::Refuted);
    }

    #[test]
    fn intersections() {
        let o = opts(ContainMode::Certified);
        let v = contain_intersection(&[x(0)], &(&x(0) * &x(1)), &o).unwrap();
        assert_eq!((v.status, v.index), (ContainmentStatus::Proved, Some(0)));
        let v = contain_intersection(&[x(0), x(1)], &x(2), &o).unwrap();
        assert_eq!(v.status, ContainmentStatus::Refuted);
        let w = v.joint_witness.unwrap();
        assert!(verify_joint_witness(&[x(0), x(1)], &x(2), &w).unwrap());
        let v = contain_intersection(&[x(0), &x(0) * &x(1)], &x(0), &o).unwrap();
        assert_eq!(v.index, Some(0));
    }

    #[test]
    fn equality() {
        let o = opts(ContainMode::Certified);
        let f = &(&x(0) * &x(1)) - &(&x(1) * &x(0));
        assert_eq!(locus_equal(&f, &f.direct_sum(&f), &o).unwrap().status, ContainmentStatus::Proved);
        assert_eq!(locus_equal(&x(0), &x(1), &o).unwrap().status, ContainmentStatus::Refuted);
    }
}
