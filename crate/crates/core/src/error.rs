use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("arity mismatch: expected {expected} matrices, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("evaluation mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("not a hereditary quadratic polynomial (offending word {0})")]
    NotHereditaryQuadratic(String),
    #[error("polynomial is not full")]
    NotFull,
    #[error("constant term of the pencil is singular")]
    SingularConstantTerm,
    #[error("pencil is not monic")]
    NotMonic,
    #[error("input too large for symbolic expansion: {0}")]
    TooLarge(String),
    #[error("rewriting requires a nonconstant f")]
    ConstantF,
    #[error("f must not contain slack letters")]
    SlackInF,
    #[error("polynomial is not analytic (contains starred letters)")]
    NotAnalytic,
    #[error("polynomial is not an atom")]
    NotAtom,
    #[error("pencil is not indecomposable")]
    NotIndecomposable,
    #[error("witness failed verification: {0}")]
    InvalidWitness(String),
    #[error("no point with f(X, X*) positive definite was found")]
    NoPositivityWitness,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
