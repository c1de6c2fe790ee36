use thiserror::Error;

/// Errors raised by the semigroup algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive integers")]
    ZeroGenerator,
    #[error("generators have gcd {0}, the complement in N is infinite")]
    NonCoprimeGenerators(u64),
    #[error("semigroup too large: membership window of {0} exceeds the supported limit")]
    TooLarge(u64),
    #[error("cannot parse generator list: {0}")]
    Parse(String),
    #[error("{0} is not an element of the semigroup")]
    NotAMember(i64),
    #[error("operation is undefined for the semigroup N")]
    IsN,
    #[error("series must have constant coefficient 1")]
    BadConstantTerm,
    #[error("truncation bound {requested} exceeds the available prefix length {available}")]
    PrefixTooShort { requested: usize, available: usize },
    #[error("non-integral value at index {index} while inverting power sums")]
    IntegralityViolation { index: usize },
    #[error("root moduli are not separated by more than the tolerance ({0:e})")]
    RootSeparationUnverifiable(f64),
    #[error("{0} is not in the ordered subset")]
    NotInSubset(usize),
    #[error("truncation bound {given} is below the required minimum {required}")]
    BoundTooSmall { given: usize, required: usize },
    #[error("chain is not strictly increasing with respect to the semigroup order")]
    ChainNotSorted,
    #[error("{0} is not a Betti element with an isolated factorization")]
    LambdaNotIsolatedBetti(usize),
    #[error("semigroup is not a complete intersection")]
    NotCompleteIntersection,
    #[error("serialized semigroup is inconsistent: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
