//! Library error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("divisor has no inverse in the factored-denominator representation")]
    NonRepresentableDivisor,

    #[error("series constant term is not invertible")]
    NonInvertibleConstantTerm,

    #[error("series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series must have constant term 1")]
    ConstantTermNotOne,

    #[error("zeta numerator fails the functional equation at index {index}")]
    ZetaSymmetry { index: usize },

    #[error("zeta numerator must satisfy P(1) > 0")]
    ZetaClassNumber,

    #[error("zeta numerator must have length 2*genus + 1 and constant term 1")]
    ZetaShape,

    #[error("base field size {q} is not a prime power")]
    NotPrimePower { q: u64 },

    #[error("capacity: need extension table length >= {needed}, have {available}")]
    Capacity { needed: usize, available: usize },

    #[error("count a_({n},{d}) over extension {ext} is not an integer: {value}")]
    NonIntegerCount {
        n: u32,
        d: i64,
        ext: usize,
        value: String,
    },

    #[error("count s for ({n},{d}) with endomorphism degree {r} is invalid: {value}")]
    InvalidSCount {
        n: u32,
        d: i64,
        r: u32,
        value: String,
    },

    #[error("stable Poincare coefficient at order {order} is not a polynomial: {value}")]
    NonPolynomial { order: usize, value: String },

    #[error("decomposition enumeration exceeded the cap of {cap} sequences")]
    EnumerationCap { cap: usize },

    #[error("ray character ({n},{d}) is not primitive")]
    NonPrimitiveRay { n: u32, d: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
