//! Rational functions in `v` with factored denominators.
//!
//! Canonical form: `sign * v^e * N(v) / prod_i (1 - v^i)^{m_i}` where `N`
//! has a positive nonzero constant term and is not divisible by `1 - v^i`
//! for any `i` in the denominator. Every denominator produced by the
//! Harder-Narasimhan / Zagier formulas has this shape, so no general
//! polynomial gcd is ever needed: exact divisibility tests by `1 - v^i`
//! keep the forms reduced.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::poly::PolyQ;
use super::rat::{rat, rat_pow, Rat};
use super::ring::{CoeffRing, LambdaRing, QAlgebra};
use crate::error::Error;

/// Denominator multiset: exponent `i` of `1 - v^i` mapped to multiplicity.
pub type DenFactors = BTreeMap<u32, u32>;

#[derive(Clone, Debug)]
pub struct RatFunc {
    sign: i8,
    vexp: i64,
    num: PolyQ,
    den: DenFactors,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            sign: 1,
            vexp: 0,
            num: PolyQ::zero(),
            den: DenFactors::new(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(PolyQ::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(PolyQ::constant(c))
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFunc::normalize(1, 0, p, DenFactors::new())
    }

    /// The Laurent monomial `v^e`.
    pub fn monomial(e: i64) -> Self {
        RatFunc {
            sign: 1,
            vexp: e,
            num: PolyQ::one(),
            den: DenFactors::new(),
        }
    }

    /// `1 / (1 - v^i)^m`.
    pub fn inv_one_minus_pow(i: u32, m: u32) -> Self {
        let mut den = DenFactors::new();
        if m > 0 {
            den.insert(i, m);
        }
        RatFunc {
            sign: 1,
            vexp: 0,
            num: PolyQ::one(),
            den,
        }
    }

    /// Canonicalize raw parts: extract the `v`-valuation and the sign of the
    /// constant term, then exact-divide the numerator by every denominator
    /// factor that still divides it.
    pub fn normalize(sign: i8, vexp: i64, num: PolyQ, den: DenFactors) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut num = num;
        let mut sign = sign;
        let mut vexp = vexp;
        if let Some(val) = num.valuation() {
            if val > 0 {
                vexp += val as i64;
                num = num.shift_down(val);
            }
        }
        if num.constant_term().is_negative() {
            sign = -sign;
            num = num.neg();
        }
        let mut out = DenFactors::new();
        // Ascending sweep; dividing by one factor never creates divisibility
        // by another that was already exhausted.
        for (&i, &m) in &den {
            if m == 0 {
                continue;
            }
            let mut m = m;
            while m > 0 {
                match num.div_one_minus_pow(i) {
                    Some(q) => {
                        num = q;
                        m -= 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                *out.entry(i).or_insert(0) += m;
            }
        }
        RatFunc {
            sign,
            vexp,
            num,
            den: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.vexp == 0 && self.num.is_one() && self.den.is_empty()
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn vexp(&self) -> i64 {
        self.vexp
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn den_factors(&self) -> &DenFactors {
        &self.den
    }

    /// The denominator product expanded to a polynomial.
    pub fn den_expanded(&self) -> PolyQ {
        expand_factors(&self.den)
    }

    pub fn neg(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            sign: -self.sign,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut union = self.den.clone();
        for (&i, &m) in &other.den {
            let e = union.entry(i).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |rf: &RatFunc| -> PolyQ {
            let mut p = rf.num.clone();
            for (&i, &m) in &union {
                let have = rf.den.get(&i).copied().unwrap_or(0);
                for _ in have..m {
                    p = p.mul(&PolyQ::one_minus_pow(i));
                }
            }
            if rf.sign < 0 {
                p = p.neg();
            }
            p
        };
        let e0 = self.vexp.min(other.vexp);
        let a = lift(self).shift_up((self.vexp - e0) as usize);
        let b = lift(other).shift_up((other.vexp - e0) as usize);
        RatFunc::normalize(1, e0, a.add(&b), union)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut den = self.den.clone();
        for (&i, &m) in &other.den {
            *den.entry(i).or_insert(0) += m;
        }
        RatFunc::normalize(
            self.sign * other.sign,
            self.vexp + other.vexp,
            self.num.mul(&other.num),
            den,
        )
    }

    pub fn scale(&self, r: &Rat) -> RatFunc {
        if num_traits::Zero::is_zero(r) || self.is_zero() {
            return RatFunc::zero();
        }
        let mut out = self.clone();
        if r.is_negative() {
            out.sign = -out.sign;
        }
        out.num = out.num.scale(&r.abs());
        out
    }

    /// Multiplicative inverse, when it stays within the factored-denominator
    /// representation. The numerator must be (up to a constant and powers of
    /// `v`) a product of factors `1 - v^i`; anything else has an inverse
    /// outside this subring and yields `None`.
    pub fn try_inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        let (extra, flipped) = invert_cyclotomic_product(&self.num)?;
        let num = extra.mul(&self.den_expanded());
        Some(RatFunc::normalize(self.sign, -self.vexp, num, flipped))
    }

    /// Exact field division.
    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(RatFunc::zero());
        }
        // Fast path: the divisor numerator divides ours exactly.
        if let Some(q) = self.num.mul(&other.den_expanded()).div_exact(&other.num) {
            return Ok(RatFunc::normalize(
                self.sign * other.sign,
                self.vexp - other.vexp,
                q,
                self.den.clone(),
            ));
        }
        let inv = other.try_inv().ok_or(Error::NonRepresentableDivisor)?;
        Ok(self.mul(&inv))
    }

    pub fn pow_i64(&self, e: i64) -> Option<RatFunc> {
        let base = if e < 0 {
            self.try_inv()?
        } else {
            self.clone()
        };
        let mut result = RatFunc::one();
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

    /// Substitute `v -> v^s`, `s >= 1`. This is the Adams operation on
    /// `Q(v)`.
    pub fn subst_pow(&self, s: u32) -> RatFunc {
        assert!(s >= 1);
        if self.is_zero() {
            return RatFunc::zero();
        }
        let den = self.den.iter().map(|(&i, &m)| (i * s, m)).collect();
        RatFunc {
            sign: self.sign,
            vexp: self.vexp * s as i64,
            num: self.num.subst_pow(s),
            den,
        }
    }

    /// Substitute `v -> 1/v`.
    ///
    /// Uses `1 - v^{-i} = -v^{-i} (1 - v^i)` on each denominator factor.
    pub fn subst_inv(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let deg = self.num.degree().unwrap() as i64;
        let mut sign = self.sign;
        let mut vexp = -self.vexp - deg;
        for (&i, &m) in &self.den {
            vexp += (i as i64) * (m as i64);
            if m % 2 == 1 {
                sign = -sign;
            }
        }
        RatFunc::normalize(sign, vexp, self.num.reversed(), self.den.clone())
    }

    /// The polynomial value, when the function is one: empty denominator and
    /// nonnegative monomial exponent.
    pub fn to_polynomial(&self) -> Option<PolyQ> {
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        if !self.den.is_empty() || self.vexp < 0 {
            return None;
        }
        let mut p = self.num.shift_up(self.vexp as usize);
        if self.sign < 0 {
            p = p.neg();
        }
        Some(p)
    }

    /// Evaluate at a rational point; `None` at poles (including `0` when the
    /// monomial exponent is negative).
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        if self.is_zero() {
            return Some(rat(0));
        }
        if num_traits::Zero::is_zero(x) && self.vexp < 0 {
            return None;
        }
        let mut den = rat(1);
        for (&i, &m) in &self.den {
            let f = rat(1) - rat_pow(x, i as i64);
            if num_traits::Zero::is_zero(&f) {
                return None;
            }
            den *= rat_pow(&f, m as i64);
        }
        let mut val = rat_pow(x, self.vexp) * self.num.eval(x) / den;
        if self.sign < 0 {
            val = -val;
        }
        Some(val)
    }

    /// Degree of the rational function as `deg(num) - deg(den)` including
    /// the monomial prefactor; `None` for zero.
    pub fn rational_degree(&self) -> Option<i64> {
        let nd = self.num.degree()? as i64;
        let dd: i64 = self.den.iter().map(|(&i, &m)| (i as i64) * (m as i64)).sum();
        Some(self.vexp + nd - dd)
    }
}

/// Expand a factor multiset into a polynomial.
fn expand_factors(den: &DenFactors) -> PolyQ {
    let mut p = PolyQ::one();
    for (&i, &m) in den {
        p = p.mul(&PolyQ::one_minus_pow(i).pow(m));
    }
    p
}

/// Write `1 / p` as `extra / prod (1 - v^i)^{m_i}` when `p` is a product of
/// a positive constant and factors `1 - v^i` (possibly partially, e.g.
/// `1 + v = (1 - v^2)/(1 - v)`). Returns `None` when `p` has a factor that
/// is not a divisor of any `(1 - v^j)^k`.
///
/// Only `1 - v^i` divisibility tests are used: first peel off whole factors
/// (largest exponent first), then try to complete the remainder to
/// `(1 - v^j)^k` for a single pair `(j, k)`.
fn invert_cyclotomic_product(p: &PolyQ) -> Option<(PolyQ, DenFactors)> {
    debug_assert!(!p.is_zero() && p.valuation() == Some(0));
    let mut rem = p.clone();
    let mut extra = PolyQ::one();
    let mut den = DenFactors::new();
    'peel: while let Some(deg) = rem.degree().filter(|&d| d > 0) {
        for j in (1..=deg as u32).rev() {
            if let Some(q) = rem.div_one_minus_pow(j) {
                *den.entry(j).or_insert(0) += 1;
                rem = q;
                continue 'peel;
            }
        }
        // Completion: R | (1 - v^j)^k for some j, k. The search caps are
        // generous for every divisor the pipeline produces.
        let cap = 3 * deg as u32 + 12;
        for j in 1..=cap {
            for k in 1..=deg as u32 {
                if (j as usize) * (k as usize) < deg {
                    continue;
                }
                let big = PolyQ::one_minus_pow(j).pow(k);
                if let Some(q) = big.div_exact(&rem) {
                    extra = extra.mul(&q);
                    *den.entry(j).or_insert(0) += k;
                    rem = PolyQ::one();
                    continue 'peel;
                }
            }
        }
        return None;
    }
    let c = rem.constant_term();
    Some((extra.scale(&c.recip()), den))
}

impl PartialEq for RatFunc {
    /// Value equality via cross-multiplication; the stored form need not be
    /// unique (e.g. `(1+v)/(1-v^2)` and `1/(1-v)` are both normal).
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        if self.sign != other.sign || self.vexp != other.vexp {
            return false;
        }
        self.num.mul(&other.den_expanded()) == other.num.mul(&self.den_expanded())
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let mut top = String::new();
        if self.vexp != 0 {
            top.push_str(&if self.vexp == 1 {
                "v".to_string()
            } else {
                format!("v^{}", self.vexp)
            });
        }
        if !self.num.is_one() || top.is_empty() {
            if !top.is_empty() {
                top.push('*');
            }
            if self.num.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1
                && !self.den.is_empty()
            {
                top.push_str(&format!("({})", self.num));
            } else {
                top.push_str(&format!("{}", self.num));
            }
        }
        write!(f, "{top}")?;
        if !self.den.is_empty() {
            write!(f, "/")?;
            let many = self.den.len() > 1 || self.den.values().any(|&m| m > 1);
            if many {
                write!(f, "(")?;
            }
            let mut first = true;
            for (&i, &m) in &self.den {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "(1 - v^{i})")?;
                if m > 1 {
                    write!(f, "^{m}")?;
                }
            }
            if many {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl CoeffRing for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn try_inv(&self) -> Option<Self> {
        RatFunc::try_inv(self)
    }
}

impl QAlgebra for RatFunc {
    fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(r.clone())
    }
    fn scale(&self, r: &Rat) -> Self {
        RatFunc::scale(self, r)
    }
}

impl LambdaRing for RatFunc {
    fn adams(&self, m: u32) -> Self {
        self.subst_pow(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio};

    fn poly(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn den(factors: &[(u32, u32)]) -> DenFactors {
        factors.iter().copied().collect()
    }

    #[test]
    fn normalize_cancels_divisible_factors() {
        // (1 - v^4) / (1 - v^2) -> 1 + v^2
        let r = RatFunc::normalize(1, 0, poly(&[1, 0, 0, 0, -1]), den(&[(2, 1)]));
        assert_eq!(r.to_polynomial().unwrap(), poly(&[1, 0, 1]));
    }

    #[test]
    fn normalize_extracts_sign() {
        // (v^2 - 1) / (1 - v^2)^2 -> -1 / (1 - v^2)
        let r = RatFunc::normalize(1, 0, poly(&[-1, 0, 1]), den(&[(2, 2)]));
        assert_eq!(r.sign(), -1);
        assert!(r.numerator().is_one());
        assert_eq!(r.den_factors(), &den(&[(2, 1)]));
    }

    #[test]
    fn normalize_zero() {
        let r = RatFunc::normalize(1, 0, PolyQ::zero(), den(&[(4, 1)]));
        assert!(r.is_zero());
    }

    #[test]
    fn inverse_pairs_multiply_to_one() {
        let a = RatFunc::inv_one_minus_pow(1, 1);
        let b = RatFunc::from_poly(PolyQ::one_minus_pow(1));
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn add_with_common_denominator() {
        // 1/(1-v) + 1/(1+v) = 2/(1-v^2); build 1/(1+v) as (1-v)/(1-v^2)
        let a = RatFunc::inv_one_minus_pow(1, 1);
        let b = RatFunc::normalize(1, 0, PolyQ::one_minus_pow(1), den(&[(2, 1)]));
        let sum = a.add(&b);
        let expect = RatFunc::inv_one_minus_pow(2, 1).scale(&rat(2));
        assert_eq!(sum, expect);
    }

    #[test]
    fn division_by_monomial() {
        // v/(1-v^2) / v = 1/(1-v^2)
        let a = RatFunc::normalize(1, 0, poly(&[0, 1]), den(&[(2, 1)]));
        let q = a.div(&RatFunc::monomial(1)).unwrap();
        assert_eq!(q, RatFunc::inv_one_minus_pow(2, 1));
    }

    #[test]
    fn division_by_zero_is_signalled() {
        assert!(matches!(
            RatFunc::one().div(&RatFunc::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn inverse_of_partial_cyclotomic() {
        // 1/(1+v) = (1-v)/(1-v^2)
        let a = RatFunc::from_poly(poly(&[1, 1]));
        let inv = a.try_inv().unwrap();
        assert_eq!(
            inv,
            RatFunc::normalize(1, 0, PolyQ::one_minus_pow(1), den(&[(2, 1)]))
        );
        assert!(a.mul(&inv).is_one());
        // 1/(1+v)^2 needs the (1-v^2)^2 completion
        let b = a.mul(&a);
        let invb = b.try_inv().unwrap();
        assert!(b.mul(&invb).is_one());
        // 1 + 2v is not a cyclotomic product
        assert!(RatFunc::from_poly(poly(&[1, 2])).try_inv().is_none());
    }

    #[test]
    fn polynomial_certificate() {
        let p = RatFunc::normalize(1, 0, poly(&[1, 0, 0, 0, -1]), den(&[(2, 1)]));
        assert_eq!(p.to_polynomial().unwrap(), poly(&[1, 0, 1]));
        assert!(RatFunc::inv_one_minus_pow(2, 1).to_polynomial().is_none());
        let q = RatFunc::from_poly(PolyQ::one_minus_pow(1).pow(4));
        assert_eq!(q.to_polynomial().unwrap(), PolyQ::one_minus_pow(1).pow(4));
    }

    #[test]
    fn subst_inv_on_simple_function() {
        // f = -v^2/(1-v^2); f(1/v) = -v^-2/(1-v^-2) = 1/(1-v^2)
        let f = RatFunc::normalize(-1, 2, PolyQ::one(), den(&[(2, 1)]));
        assert_eq!(f.subst_inv(), RatFunc::inv_one_minus_pow(2, 1));
    }

    #[test]
    fn eval_matches_structure() {
        // v/(1-v^2) at v = 1/2 -> (1/2)/(3/4) = 2/3
        let a = RatFunc::normalize(1, 0, poly(&[0, 1]), den(&[(2, 1)]));
        assert_eq!(a.eval(&ratio(1, 2)).unwrap(), ratio(2, 3));
        assert!(a.eval(&rat(1)).is_none());
    }
}
