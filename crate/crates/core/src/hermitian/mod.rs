//! The real structure `(X, Y) ↦ (Y*, X*)`: unsignatured witnesses, real
//! loci and the hermitian forms of pencil equivalence.

pub mod gleich;
pub mod gradient;
pub mod real;
pub mod unsignatured;

pub use gleich::{
    gaussian_sqrt_of_norm, gleichstellensatz_analytic, gleichstellensatz_hermitian, pencil_indecomposability, two_squares,
    verify_hermitian_equivalence, GleichWitness, HermitianEquivalence,
};
pub use gradient::{gradient_conjugation_check, GradientReport};
pub use real::{
    real_containment_analytic, real_containment_hermitian, real_containment_montecarlo, real_line_probe,
    verify_real_witness, RealContainmentVerdict, RealProbeVerdict, RealRefutation, RealWitness, Side,
};
pub use unsignatured::{
    is_hermitian_monic_pencil, unsignatured_search, SizeSignatures, UnsignaturedVerdict, UnsignaturedWitness,
};
