//! Algebra closures, indecomposability, pencil equivalence, atoms and
//! free-locus containment.

pub mod atom;
pub mod closure;
pub mod contain;
pub mod equiv;
pub mod indecomposable;

pub use atom::{
    atomic_blocks, is_atom, monic_ampliation, stable_assoc, AtomCertificate, AtomVerdict, AtomicDecomposition, BlockClass,
    NotAtomReason, StableAssocVerdict,
};
pub use closure::{algebra_closure, algebra_closure_of_size, commutant, is_invariant, spin, AlgebraClosure};
pub use contain::{
    contain_intersection, locus_contains, locus_equal, montecarlo_containment, verify_joint_witness, verify_refutation,
    ContainMode, ContainOptions, ContainPath, ContainmentCertificate, ContainmentStatus, ContainmentVerdict,
    EqualityVerdict, IntersectionVerdict, RefutationWitness,
};
pub use equiv::{pencil_equiv, stabilizer_dim, verify_equivalence, EquivalenceWitness};
pub use indecomposable::{
    block_triangularize, composition_series, is_indecomposable, is_indecomposable_with, BlockStatus, CompositionFactor,
    IndecomposableOptions, IndecomposableVerdict,
};
