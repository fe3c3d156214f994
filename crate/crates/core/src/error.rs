use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot evaluate at {n}: prime factor {prime} is not assigned a value")]
    Unassigned { n: u64, prime: u64 },
    #[error("cannot evaluate at {n}: it has a prime factor above the table limit {limit}")]
    BeyondTable { n: u64, limit: u64 },
    #[error("window of length {len} is too short, index {needed} required")]
    InsufficientWindow { len: usize, needed: u64 },
    #[error("value at index {index} has modulus {modulus} > 1")]
    NotBounded { index: usize, modulus: f64 },
    #[error("{0} is not a ±1 value")]
    NotSign(String),
    #[error("multiplicativity violated: f({m}·{n}) != f({m})·f({n})")]
    NotMultiplicative { m: usize, n: usize },
    #[error("{j} has a prime factor outside the chosen primes")]
    ForeignPrime { j: u64 },
    #[error("{j} has exponent {exponent} of {prime}, which does not fit modulus {modulus}")]
    ExponentOverflow {
        j: u64,
        prime: u64,
        exponent: u32,
        modulus: usize,
    },
    #[error("probability weights are degenerate (total {0})")]
    DegenerateWeights(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
