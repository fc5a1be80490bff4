//! Exact scalar fields, dense matrices and univariate polynomials.

pub mod float;
pub mod matrix;
pub mod modp;
pub mod random;
pub mod scalar;
pub mod signature;
pub mod solve;
pub mod unipoly;

pub use matrix::DenseMatrix;
pub use modp::{ModMatrix, PrimeField, PrimeFieldElement, DEFAULT_PRIME, GAUSSIAN_PRIME};
pub use scalar::Scalar;
pub use signature::{hermitian_signature, Signature};
pub use solve::{minimal_polynomial, nullspace_filtered, Echelon, ModEchelon};
pub use unipoly::{isolate_real_roots, sturm_real_root_count, Interval, IsolatingInterval, UniPoly};
