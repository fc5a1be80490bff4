//! Words, free polynomials, matrix polynomials and ampliation.

pub mod ampliate;
pub mod poly;
pub mod quadratic;
pub mod word;

pub use ampliate::{ampliate, ampliation_var, canonical_shuffle};
pub use poly::{FreePoly, MatrixPoly};
pub use quadratic::{quadratic_parts, QuadraticForm};
pub use word::{Alphabet, Context, Letter, Var, Word};
