use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{x} is not invertible modulo {m}")]
    NotCoprime { x: u64, m: u64 },
    #[error("field degree {0} is not supported (expected 1 or 2)")]
    UnsupportedDegree(u32),
    #[error("zero has no {0}")]
    ZeroElement(&'static str),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid group presentation: {0}")]
    InvalidGroup(String),
    #[error("pair does not give a 2-dimensional representation: {0}")]
    NotDimTwo(String),
    #[error("subgroup closure exceeded {cap} elements")]
    ClosureCap { cap: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
