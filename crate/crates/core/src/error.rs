use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed number: {0:?}")]
    MalformedNumber(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("algebra has no module family")]
    NoModuleFamily,
    #[error("basis symbol {0} does not belong to the algebra")]
    ForeignBasisSymbol(String),
    #[error("window N = {0} is too small for this computation (need N >= {1})")]
    WindowTooSmall(i64, i64),
    #[error("vector outside the ambient span: {0}")]
    NotASubspace(String),
    #[error("cocycle does not apply here: {0}")]
    DomainMismatch(String),
    #[error("automorphism parameters invalid for this algebra: {0}")]
    InvalidAutForAlgebra(String),
    #[error("derivation invalid for this algebra: {0}")]
    InvalidDerForAlgebra(String),
    #[error("duplicate central name {0:?}")]
    DuplicateCentralName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
