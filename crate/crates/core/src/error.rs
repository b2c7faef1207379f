use thiserror::Error;

/// Errors raised by the lattice and form machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),
    #[error("{0} is not a negative discriminant (must be < 0 and 0 or 1 mod 4)")]
    InvalidDiscriminant(i128),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(i128, i128),
    #[error("form {0} is not primitive")]
    Imprimitive(String),
    #[error("form {form} is not in V_{m}")]
    NotInVm { form: String, m: i64 },
    #[error("{k} does not divide {m}")]
    NotADivisor { k: i64, m: i64 },
    #[error("surface types differ: {0} vs {1}")]
    SurfaceMismatch(i64, i64),
    #[error("class {0} is not ample")]
    NotAmple(String),
    #[error("degree {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("invalid Atkin-Lehner data: {0}")]
    InvalidAtkinLehner(String),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
