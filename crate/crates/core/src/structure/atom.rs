//! Atomicity via point-centered ampliation, atomic blocks and stable
//! associativity of atoms.

use serde::Serialize;

use super::equiv::{pencil_equiv, EquivalenceWitness};
use super::indecomposable::{
    composition_series, is_indecomposable_with, BlockStatus, CompositionFactor, IndecomposableOptions,
    IndecomposableVerdict,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eval::{common_regular_point, fullness_test, unit_test, FullnessVerdict, MatrixTuple, UnitVerdict};
use crate::freealg::MatrixPoly;
use crate::linalg::Scalar;
use crate::linearize::{epic_linearization, monicize, LinearPencil, LinearizationResult};

/// `L(X)⁻¹·L^X` for the pencil of `r` ampliated at `x`.
pub fn monic_ampliation(r: &LinearizationResult, x: &MatrixTuple) -> Result<LinearPencil> {
    let g = x.arity() as u32;
    let a = r.pencil.alphabet();
    let pencil = if a.nvars < g { r.pencil.with_alphabet(crate::freealg::Alphabet { nvars: g, ..a })? } else { r.pencil.clone() };
    Ok(monicize(&pencil.ampliate(x)?)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomCertificate {
    pub point: MatrixTuple,
    pub n: usize,
    /// Size of the epic pencil of `f`.
    pub pencil_size: usize,
    /// Size of the ampliated monic pencil, whose coefficients generate `M_d`.
    pub ampliated_size: usize,
    pub closure_dimension: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotAtomReason {
    NotFull { fullness: FullnessVerdict },
    Unit { unit: UnitVerdict },
    /// The ampliated monic pencil leaves `subspace` invariant.
    Decomposable { point: MatrixTuple, pencil_size: usize, subspace: Vec<Vec<Scalar>> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AtomVerdict {
    Yes { certificate: AtomCertificate },
    No { reason: NotAtomReason },
    Inconclusive { reason: String },
}

impl AtomVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, AtomVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, AtomVerdict::No { .. })
    }
}

fn not_full_from_linearization() -> NotAtomReason {
    NotAtomReason::NotFull {
        fullness: FullnessVerdict::ProbablyNotFull {
            sizes: Vec::new(),
            trials: 0,
            failure_bound: 0.0,
            note: "linearization has a zero column after a constant basis change".into(),
        },
    }
}

/// Full, non-unit and indecomposable after ampliation at a regular point.
pub fn is_atom(f: &MatrixPoly, budget: &Budget) -> Result<AtomVerdict> {
    let fullness = fullness_test(f, budget)?;
    let FullnessVerdict::Full { witness } = &fullness else {
        return Ok(AtomVerdict::No { reason: NotAtomReason::NotFull { fullness } });
    };
    let unit = unit_test(f, budget)?;
    if unit.is_unit() {
        return Ok(AtomVerdict::No { reason: NotAtomReason::Unit { unit } });
    }
    let r = match epic_linearization(f) {
        Ok(r) => r,
        Err(Error::NotFull) => return Ok(AtomVerdict::No { reason: not_full_from_linearization() }),
        Err(e) => return Err(e),
    };
    let m = monic_ampliation(&r, witness)?;
    let opts = IndecomposableOptions { seed: budget.seed, real_only: false };
    Ok(match is_indecomposable_with(&m, opts)? {
        IndecomposableVerdict::Yes { dimension } => AtomVerdict::Yes {
            certificate: AtomCertificate {
                point: witness.clone(),
                n: witness.n,
                pencil_size: r.pencil.size(),
                ampliated_size: m.size(),
                closure_dimension: dimension,
                seed: budget.seed,
            },
        },
        IndecomposableVerdict::No { subspace } => AtomVerdict::No {
            reason: NotAtomReason::Decomposable { point: witness.clone(), pencil_size: m.size(), subspace },
        },
        IndecomposableVerdict::NeedsFieldExtension { minimal_polynomial, .. } => AtomVerdict::Inconclusive {
            reason: format!("no invariant subspace over Q(i); commutant element has minimal polynomial {minimal_polynomial}"),
        },
    })
}

/// A class of mutually equivalent composition factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockClass {
    pub pencil: LinearPencil,
    pub multiplicity: usize,
    #[serde(flatten)]
    pub status: BlockStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicDecomposition {
    pub point: MatrixTuple,
    pub n: usize,
    pub pencil_size: usize,
    pub blocks: Vec<BlockClass>,
    /// Every block was certified indecomposable.
    pub complete: bool,
    pub seed: u64,
}

impl AtomicDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }
}

pub(crate) fn group_factors(factors: Vec<CompositionFactor>, seed: u64) -> Result<Vec<BlockClass>> {
    let mut classes: Vec<BlockClass> = Vec::new();
    'outer: for f in factors {
        if f.status == BlockStatus::Indecomposable {
            for c in classes.iter_mut() {
                if c.status == BlockStatus::Indecomposable && pencil_equiv(&c.pencil, &f.pencil, seed)?.is_some() {
                    c.multiplicity += 1;
                    continue 'outer;
                }
            }
        }
        classes.push(BlockClass { pencil: f.pencil, multiplicity: 1, status: f.status });
    }
    Ok(classes)
}

/// Composition factors of the monic ampliated pencil of `f` at a regular
/// point, grouped into equivalence classes.
pub fn atomic_blocks(f: &MatrixPoly, budget: &Budget) -> Result<AtomicDecomposition> {
    let FullnessVerdict::Full { witness } = fullness_test(f, budget)? else {
        return Err(Error::NotFull);
    };
    let r = epic_linearization(f)?;
    decomposition_at(&r, &witness, budget.seed)
}

pub(crate) fn decomposition_at(r: &LinearizationResult, x: &MatrixTuple, seed: u64) -> Result<AtomicDecomposition> {
    let m = monic_ampliation(r, x)?;
    let factors = composition_series(&m, IndecomposableOptions { seed, real_only: false })?;
    debug_assert_eq!(factors.iter().map(|f| f.pencil.size()).sum::<usize>(), m.size());
    let blocks = group_factors(factors, seed)?;
    Ok(AtomicDecomposition {
        point: x.clone(),
        n: x.n,
        pencil_size: r.pencil.size(),
        complete: blocks.iter().all(|b| b.status == BlockStatus::Indecomposable),
        blocks,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StableAssocVerdict {
    /// The monic ampliated pencils at `point` satisfy `M = P·L·Q`.
    Equivalent { point: MatrixTuple, witness: EquivalenceWitness, f_pencil_size: usize, g_pencil_size: usize },
    NotEquivalent { reason: String },
    Inconclusive { reason: String },
}

/// Stable associativity of two atoms, decided on their monic ampliated
/// pencils at a common regular point.
pub fn stable_assoc(f: &MatrixPoly, g: &MatrixPoly, budget: &Budget) -> Result<StableAssocVerdict> {
    let joint = f.alphabet().join(g.alphabet());
    let (f, g) = (f.clone().with_alphabet(joint), g.clone().with_alphabet(joint));
    let rf = epic_linearization(&f)?;
    let rg = epic_linearization(&g)?;
    if rf.pencil.size() != rg.pencil.size() {
        return Ok(StableAssocVerdict::NotEquivalent {
            reason: format!("epic pencils have sizes {} and {}", rf.pencil.size(), rg.pencil.size()),
        });
    }
    let Some(x) = common_regular_point(&[&f, &g], joint.nvars as usize, budget, 0x7361)? else {
        return Ok(StableAssocVerdict::Inconclusive { reason: "no common regular point within budget".into() });
    };
    let lf = monic_ampliation(&rf, &x)?;
    let lg = monic_ampliation(&rg, &x)?;
    Ok(match pencil_equiv(&lf, &lg, budget.seed)? {
        Some(witness) => StableAssocVerdict::Equivalent {
            point: x,
            witness,
            f_pencil_size: rf.pencil.size(),
            g_pencil_size: rg.pencil.size(),
        },
        None => StableAssocVerdict::NotEquivalent { reason: "no invertible solution of P'M = LQ was sampled".into() },
    })
}
