//! Evaluation at matrix points and randomized identity tests.

pub mod generic;
pub mod oracle;
pub mod tuple;

pub use generic::{symbolic_generic_det, CommPoly, GenericDet};
pub use oracle::{
    common_regular_point, failure_bound, sampling_for, verify_regular,
    estimate_locus_degree, fullness_test, unit_test, FullnessVerdict, LocusDegree, NotUnitWitness, UnitVerdict,
};
pub use tuple::{det_along_line, evaluate, evaluate_mod, AffineLine, EvalMode, MatrixTuple};
