//! Coefficient-ring abstractions.
//!
//! Truncated series, the plethystic operations and the twisted extraction
//! all run over a pluggable commutative coefficient ring: `Rat`, `RatFunc`,
//! `RatFunc2` or extension-indexed count vectors. The traits here are the
//! least structure those call sites need.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rat::Rat;

/// A commutative ring with exact arithmetic.
///
/// `try_inv` returns the multiplicative inverse when the element is a unit
/// whose inverse is representable, and `None` otherwise.
pub trait CoeffRing: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self^e` for a possibly negative exponent; requires a representable
    /// inverse when `e < 0`.
    fn pow_i64(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut result = Self::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Some(result)
    }
}

/// A `CoeffRing` that is an algebra over the rationals.
pub trait QAlgebra: CoeffRing {
    fn from_rat(r: &Rat) -> Self;

    fn scale(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r))
    }
}

/// A `QAlgebra` carrying Adams operations `psi_m`, `m >= 1`.
///
/// Required laws: `psi_1 = id`, `psi_m . psi_k = psi_{mk}`, additivity and
/// `Rat`-linearity. Multiplicativity is *not* assumed (the dilation action
/// on count vectors is not multiplicative for twisted products).
pub trait LambdaRing: QAlgebra {
    fn adams(&self, m: u32) -> Self;
}

impl CoeffRing for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if <Rat as Zero>::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl QAlgebra for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl LambdaRing for Rat {
    /// Rational constants are Adams-fixed.
    fn adams(&self, _m: u32) -> Self {
        self.clone()
    }
}
