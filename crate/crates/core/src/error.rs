use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^30)")]
    ModulusTooLarge(u64),
    #[error("characteristic {0} requires an explicit opt-in (6 is not invertible)")]
    SmallCharacteristic(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("operands live in different algebras ({0})")]
    Mismatch(&'static str),
    #[error("bracket of an empty argument list")]
    EmptyBracket,
    #[error("operation needs 1/{needs} but the field has characteristic {characteristic}")]
    UnsupportedCharacteristic { characteristic: u64, needs: u64 },
    #[error("vector of length {got} in a space of dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("subspace of rank {small} is not contained in subspace of rank {big}")]
    NotContained { small: usize, big: usize },
    #[error("relation is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("relation has degree 0")]
    ConstantRelation,
    #[error("degree {degree} exceeds the truncation degree {max}")]
    Truncation { degree: usize, max: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("series: {0}")]
    Series(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = core::result::Result<T, Error>;
