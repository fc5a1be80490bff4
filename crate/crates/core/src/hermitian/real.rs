//! Real free loci `𝒵_re(f) = {X : det f(X, X*) = 0}`: exact refutations on
//! real-parameter lines and the containment decisions for analytic atoms
//! and unsignatured hermitian atoms.

use serde::Serialize;

use super::unsignatured::UnsignaturedWitness;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::{det_along_line, evaluate, AffineLine, EvalMode, MatrixTuple};
use crate::freealg::{Alphabet, Context, MatrixPoly};
use crate::linalg::random::seeded;
use crate::linalg::{isolate_real_roots, sturm_real_root_count, Interval, IsolatingInterval, Scalar, UniPoly};
use crate::structure::contain::small_point_probe;
use crate::structure::{
    is_atom, locus_contains, ContainOptions, ContainPath, ContainmentCertificate, ContainmentStatus, ContainmentVerdict,
    RefutationWitness,
};

/// A point of `𝒵_re(f) ∖ 𝒵_re(h)`, or a real line and an interval holding
/// exactly one real root of `factor`, each such root being one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealWitness {
    Point { point: MatrixTuple },
    Interval { line: AffineLine, factor: UniPoly, interval: IsolatingInterval },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RealProbeVerdict {
    Refuted { witness: RealWitness },
    Consistent { sizes: Vec<usize>, lines_per_size: usize },
}

fn joint(f: &MatrixPoly, h: &MatrixPoly) -> (MatrixPoly, MatrixPoly) {
    let a = f.alphabet().join(h.alphabet());
    let a = Alphabet { context: a.context.max(Context::Involutive), ..a };
    (f.clone().with_alphabet(a), h.clone().with_alphabet(a))
}

/// `sqfree(p) / gcd(sqfree(p), q·q̄)`; its real roots are the real roots of
/// `p` where `q` does not vanish.
fn real_factor(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    let sp = p.squarefree_part()?;
    let qq = q * &q.conj();
    Ok(sp.exact_div(&sp.gcd(&qq)).expect("gcd divides"))
}

/// Samples lines `X₀ + tX₁` with complex entries and real `t`. For hermitian
/// `f` the determinant along the line is a real polynomial, so Sturm
/// sequences locate its real roots exactly.
pub fn real_line_probe(f: &MatrixPoly, h: &MatrixPoly, budget: &Budget) -> Result<RealProbeVerdict> {
    if !f.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let (f, h) = joint(f, h);
    let g = f.alphabet().nvars as usize;
    let mut rng = seeded(budget.seed ^ 0x7265_616c);
    let sizes: Vec<usize> = (1..=budget.n_max).collect();
    for &n in &sizes {
        for _ in 0..budget.trials {
            let line = AffineLine::random(&mut rng, g, n, budget.bound, true, EvalMode::Star);
            let p = det_along_line(&f, &line)?;
            let q = det_along_line(&h, &line)?;
            debug_assert!(p.is_real());
            if p.is_zero() {
                if q.is_zero() {
                    continue;
                }
                let d = q.degree().unwrap_or(0) as i64;
                let t = (0..=d + 1).map(Scalar::from_int).find(|t| !q.eval(t).is_zero()).expect("nonzero polynomial");
                return Ok(RealProbeVerdict::Refuted { witness: RealWitness::Point { point: line.at_real(&t) } });
            }
            let r = real_factor(&p, &q)?;
            if r.degree().unwrap_or(0) == 0 || sturm_real_root_count(&r, &Interval::RealLine)? == 0 {
                continue;
            }
            let interval = isolate_real_roots(&r)?.into_iter().next().expect("a real root");
            let witness = if interval.exact {
                RealWitness::Point { point: line.at_real(&Scalar::from_rational(interval.hi.clone())) }
            } else {
                RealWitness::Interval { line, factor: r, interval }
            };
            return Ok(RealProbeVerdict::Refuted { witness });
        }
    }
    Ok(RealProbeVerdict::Consistent { sizes, lines_per_size: budget.trials })
}

/// Exact re-verification of a real refutation.
pub fn verify_real_witness(f: &MatrixPoly, h: &MatrixPoly, w: &RealWitness) -> Result<bool> {
    let (f, h) = joint(f, h);
    match w {
        RealWitness::Point { point } => Ok(point.mode == EvalMode::Star
            && evaluate(&f, point)?.det().is_zero()
            && !evaluate(&h, point)?.det().is_zero()),
        RealWitness::Interval { line, factor, interval } => {
            if line.base.mode != EvalMode::Star || !factor.is_real() || factor.degree().unwrap_or(0) == 0 {
                return Ok(false);
            }
            let p = det_along_line(&f, line)?;
            let q = det_along_line(&h, line)?;
            let inside = Interval::Closed(interval.lo.clone(), interval.hi.clone());
            Ok(!p.is_zero()
                && factor.divides(&p)
                && factor.gcd(&(&q * &q.conj())).degree() == Some(0)
                && sturm_real_root_count(factor, &inside)? >= 1)
        }
    }
}

/// Real witnesses: the deterministic small real points, then real lines.
fn real_refutation(f: &MatrixPoly, h: &MatrixPoly, budget: &Budget) -> Result<Option<RealWitness>> {
    let (fj, hj) = joint(f, h);
    if let Some(point) = small_point_probe(&fj, &hj)? {
        return Ok(Some(RealWitness::Point { point }));
    }
    let herm = if f.is_hermitian() { fj } else { &fj.adjoint() * &fj };
    Ok(match real_line_probe(&herm, &hj, budget)? {
        RealProbeVerdict::Refuted { witness } => Some(witness),
        RealProbeVerdict::Consistent { .. } => None,
    })
}

/// Which of `f`, `f*` produced a containment proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    F,
    FStar,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealRefutation {
    Real { witness: RealWitness },
    /// A complex refutation; the real one it implies was not located.
    Complex { witness: RefutationWitness, note: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RealContainmentVerdict {
    Proved { via: Side, path: ContainPath, certificate: ContainmentCertificate },
    Refuted { refutation: RealRefutation },
    ConsistentUpTo {
        path: ContainPath,
        sizes: Vec<usize>,
        lines_per_size: usize,
        /// Absent when only real lines were sampled: real loci are not
        /// Zariski dense, so no Schwartz–Zippel bound applies.
        failure_bound: Option<f64>,
        note: String,
    },
}

impl RealContainmentVerdict {
    pub fn status(&self) -> ContainmentStatus {
        match self {
            RealContainmentVerdict::Proved { .. } => ContainmentStatus::Proved,
            RealContainmentVerdict::Refuted { .. } => ContainmentStatus::Refuted,
            RealContainmentVerdict::ConsistentUpTo { .. } => ContainmentStatus::ConsistentUpTo,
        }
    }
}

fn consistent(v: ContainmentVerdict) -> RealContainmentVerdict {
    match v {
        ContainmentVerdict::ConsistentUpTo { path, sizes, lines_per_size, failure_bound, note } => {
            RealContainmentVerdict::ConsistentUpTo {
                path,
                sizes,
                lines_per_size,
                failure_bound: Some(failure_bound),
                note,
            }
        }
        _ => unreachable!("only inconclusive verdicts are forwarded"),
    }
}

fn refuted(f: &MatrixPoly, h: &MatrixPoly, complex: RefutationWitness, budget: &Budget, note: &str) -> Result<RealContainmentVerdict> {
    let refutation = match real_refutation(f, h, budget)? {
        Some(witness) => RealRefutation::Real { witness },
        None => RealRefutation::Complex { witness: complex, note: note.to_string() },
    };
    Ok(RealContainmentVerdict::Refuted { refutation })
}

fn require_atom(f: &MatrixPoly, budget: &Budget) -> Result<()> {
    if is_atom(f, budget)?.is_yes() {
        Ok(())
    } else {
        Err(Error::NotAtom)
    }
}

/// `𝒵_re(f) ⊆ 𝒵_re(h)` for an analytic atom `f` holds iff `𝒵(f) ⊆ 𝒵(h)` or
/// `𝒵(f*) ⊆ 𝒵(h)` in the letters `x, x*` taken independently.
pub fn real_containment_analytic(f: &MatrixPoly, h: &MatrixPoly, opts: &ContainOptions) -> Result<RealContainmentVerdict> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    require_atom(f, &opts.budget)?;
    let (fj, hj) = joint(f, h);
    let (fs, _) = joint(&f.adjoint(), h);
    let vf = locus_contains(&fj, &hj, opts)?;
    if let ContainmentVerdict::Proved { path, certificate } = vf {
        return Ok(RealContainmentVerdict::Proved { via: Side::F, path, certificate });
    }
    let vs = locus_contains(&fs, &hj, opts)?;
    if let ContainmentVerdict::Proved { path, certificate } = vs {
        return Ok(RealContainmentVerdict::Proved { via: Side::FStar, path, certificate });
    }
    match (vf, vs) {
        (ContainmentVerdict::Refuted { witness, .. }, ContainmentVerdict::Refuted { .. }) => refuted(
            f,
            h,
            witness,
            &opts.budget,
            "both f and f* are refuted over the complex locus, so the real containment fails",
        ),
        (v @ ContainmentVerdict::ConsistentUpTo { .. }, _) | (_, v @ ContainmentVerdict::ConsistentUpTo { .. }) => {
            Ok(consistent(v))
        }
        _ => unreachable!("proved verdicts returned above"),
    }
}

/// `𝒵_re(f) ⊆ 𝒵_re(h)` for an unsignatured hermitian atom `f` holds iff
/// `𝒵(f) ⊆ 𝒵(h)` in the letters `x, x*` taken independently.
pub fn real_containment_hermitian(
    f: &MatrixPoly,
    h: &MatrixPoly,
    witness: &UnsignaturedWitness,
    opts: &ContainOptions,
) -> Result<RealContainmentVerdict> {
    if !f.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !witness.verify(f)? {
        return Err(Error::InvalidWitness("values are not invertible with distinct signatures".into()));
    }
    require_atom(f, &opts.budget)?;
    let (fj, hj) = joint(f, h);
    match locus_contains(&fj, &hj, opts)? {
        ContainmentVerdict::Proved { path, certificate } => Ok(RealContainmentVerdict::Proved { via: Side::F, path, certificate }),
        ContainmentVerdict::Refuted { witness, .. } => refuted(
            f,
            h,
            witness,
            &opts.budget,
            "f is an unsignatured atom, so the complex refutation implies a real one",
        ),
        v => Ok(consistent(v)),
    }
}

/// Refutation search on real points only, without hypotheses on `f`.
pub fn real_containment_montecarlo(f: &MatrixPoly, h: &MatrixPoly, budget: &Budget) -> Result<RealContainmentVerdict> {
    if let Some(witness) = real_refutation(f, h, budget)? {
        return Ok(RealContainmentVerdict::Refuted { refutation: RealRefutation::Real { witness } });
    }
    Ok(RealContainmentVerdict::ConsistentUpTo {
        path: ContainPath::MonteCarlo,
        sizes: (1..=budget.n_max).collect(),
        lines_per_size: budget.trials,
        failure_bound: None,
        note: "no real point of the locus of f outside that of h was found".into(),
    })
}
