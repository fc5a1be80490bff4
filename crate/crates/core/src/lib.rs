//! Exact algorithms for noncommutative matrix polynomials: fullness, atoms,
//! free-locus containment, real loci and slack ideals.

pub mod budget;
pub mod error;
pub mod eval;
pub mod freealg;
pub mod hermitian;
pub mod linalg;
pub mod linearize;
pub mod slack;
pub mod structure;

pub use budget::Budget;
pub use error::{Error, Result};
