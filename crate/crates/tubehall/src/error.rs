use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u64, u64),
    #[error("quiver mismatch: {0} vs {1} vertices")]
    QuiverMismatch(usize, usize),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("length bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("q = 2 rejected: Z/(q-1) is trivial")]
    DegenerateModulus,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("inconsistent residues across primes: {0}")]
    InconsistentResidues(String),
    #[error("insufficient primes: {0}")]
    InsufficientPrimes(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
