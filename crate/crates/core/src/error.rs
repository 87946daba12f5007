use thiserror::Error;

/// Errors raised by field, function, code, and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field degree {0} is outside the supported range 2..=20")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} is not a primitive polynomial of degree {degree}")]
    NotPrimitive { degree: u32, modulus: u64 },

    #[error("value {value} is not an element of GF(2^{degree})")]
    ElementOutOfRange { value: u64, degree: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("code dimension {dimension} exceeds the enumeration limit of {limit}")]
    Capacity { dimension: usize, limit: usize },

    #[error(
        "codeword map (x, y) -> c_xy is not injective (rank {rank}, expected {expected}); \
         the Walsh route would overcount, use exhaustive enumeration instead"
    )]
    NonInjective { rank: usize, expected: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
