use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    CompositeP(u64),

    #[error("m must be odd (got m = {0})")]
    EvenM(u32),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("field of order {order} exceeds the table cap {cap}")]
    TooLarge { order: u128, cap: u64 },

    #[error("enumeration of {count} items exceeds the cap {cap}")]
    TooLargeToEnumerate { count: u128, cap: u64 },

    #[error("element is not in the subfield of degree {degree}")]
    NotInSubfield { degree: u32 },

    #[error("{degree} does not divide the field degree {field_degree}")]
    NotADivisor { degree: u32, field_degree: u32 },

    #[error("character sum is not rational: residue counts {0:?}")]
    NonRationalSum(Vec<u64>),

    #[error("weight is not integral for T = {0}")]
    NonIntegralWeight(i64),

    #[error("Gaussian binomial basis must not be 0 or 1 (got {0})")]
    InvalidBasis(i64),

    #[error("elements do not form a basis: Moore matrix is singular")]
    NotABasis,

    #[error("verification failed: {clause}: {detail}")]
    VerificationFailed { clause: String, detail: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
