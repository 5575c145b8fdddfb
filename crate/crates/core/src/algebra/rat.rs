//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate happens over `Rat`, an
//! arbitrary-precision rational with the usual invariants (positive
//! denominator, fully reduced).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n / d`, `d != 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from a big integer.
pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `base^exp` for a big integer base and nonnegative exponent.
pub fn big_pow(base: &BigInt, exp: u32) -> BigInt {
    base.pow(exp)
}

/// `x^e` with `e` possibly negative; `x != 0` when `e < 0`.
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    if e < 0 {
        assert!(!x.is_zero(), "negative power of zero");
    }
    let e32: i32 = e.try_into().expect("exponent out of i32 range");
    x.pow(e32)
}

/// Fractional part `{x} = x - floor(x)`, always in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// True if `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The integer value of `x`; panics when `x` is not an integer.
pub fn to_integer(x: &Rat) -> BigInt {
    assert!(is_integer(x), "expected an integer, got {x}");
    x.numer().clone()
}

/// True if `x >= 0`.
pub fn is_nonnegative(x: &Rat) -> bool {
    !x.is_negative()
}
