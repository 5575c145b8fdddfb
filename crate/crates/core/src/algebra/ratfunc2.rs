//! Rational functions in `(u, v)` with factored denominators.
//!
//! Same discipline as `RatFunc`: `sign * u^{e_u} v^{e_v} * N(u,v) /
//! prod (1 - u^a v^b)^m`, with the numerator not divisible by any factor
//! still present in the denominator. The sign is carried by the coefficient
//! of the minimal monomial (graded-lex) of `N`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::poly2::{Exp2, Poly2};
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::ring::{CoeffRing, LambdaRing, QAlgebra};

/// Denominator multiset: `(a, b)` of `1 - u^a v^b` mapped to multiplicity.
pub type DenFactors2 = BTreeMap<Exp2, u32>;

#[derive(Clone, Debug)]
pub struct RatFunc2 {
    sign: i8,
    uexp: i64,
    vexp: i64,
    num: Poly2,
    den: DenFactors2,
}

impl RatFunc2 {
    pub fn zero() -> Self {
        RatFunc2 {
            sign: 1,
            uexp: 0,
            vexp: 0,
            num: Poly2::zero(),
            den: DenFactors2::new(),
        }
    }

    pub fn one() -> Self {
        RatFunc2::from_poly(Poly2::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc2::from_poly(Poly2::constant(c))
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc2::normalize(1, 0, 0, p, DenFactors2::new())
    }

    /// The Laurent monomial `u^a v^b`.
    pub fn monomial(a: i64, b: i64) -> Self {
        RatFunc2 {
            sign: 1,
            uexp: a,
            vexp: b,
            num: Poly2::one(),
            den: DenFactors2::new(),
        }
    }

    /// `1 / (1 - u^a v^b)^m`.
    pub fn inv_one_minus_mono(a: u32, b: u32, m: u32) -> Self {
        let mut den = DenFactors2::new();
        if m > 0 {
            den.insert((a, b), m);
        }
        RatFunc2 {
            sign: 1,
            uexp: 0,
            vexp: 0,
            num: Poly2::one(),
            den,
        }
    }

    pub fn normalize(sign: i8, uexp: i64, vexp: i64, num: Poly2, den: DenFactors2) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        if num.is_zero() {
            return RatFunc2::zero();
        }
        let mut num = num;
        let mut sign = sign;
        let mut uexp = uexp;
        let mut vexp = vexp;
        let (ca, cb) = num.exponent_content();
        if ca > 0 || cb > 0 {
            uexp += ca as i64;
            vexp += cb as i64;
            num = num.shift_down(ca, cb);
        }
        if num.min_term().map_or(false, |(_, c)| c.is_negative()) {
            sign = -sign;
            num = num.neg();
        }
        let mut out = DenFactors2::new();
        for (&(a, b), &m) in &den {
            if m == 0 {
                continue;
            }
            let mut m = m;
            while m > 0 {
                match num.div_one_minus_mono(a, b) {
                    Some(q) => {
                        num = q;
                        m -= 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                *out.entry((a, b)).or_insert(0) += m;
            }
        }
        RatFunc2 {
            sign,
            uexp,
            vexp,
            num,
            den: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1
            && self.uexp == 0
            && self.vexp == 0
            && self.num.is_one()
            && self.den.is_empty()
    }

    pub fn den_expanded(&self) -> Poly2 {
        let mut p = Poly2::one();
        for (&(a, b), &m) in &self.den {
            p = p.mul(&Poly2::one_minus_mono(a, b).pow(m));
        }
        p
    }

    pub fn neg(&self) -> RatFunc2 {
        if self.is_zero() {
            return RatFunc2::zero();
        }
        RatFunc2 {
            sign: -self.sign,
            ..self.clone()
        }
    }

    pub fn add(&self, other: &RatFunc2) -> RatFunc2 {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut union = self.den.clone();
        for (&e, &m) in &other.den {
            let slot = union.entry(e).or_insert(0);
            *slot = (*slot).max(m);
        }
        let lift = |rf: &RatFunc2| -> Poly2 {
            let mut p = rf.num.clone();
            for (&(a, b), &m) in &union {
                let have = rf.den.get(&(a, b)).copied().unwrap_or(0);
                for _ in have..m {
                    p = p.mul(&Poly2::one_minus_mono(a, b));
                }
            }
            if rf.sign < 0 {
                p = p.neg();
            }
            p
        };
        let u0 = self.uexp.min(other.uexp);
        let v0 = self.vexp.min(other.vexp);
        let a = lift(self).shift_up((self.uexp - u0) as u32, (self.vexp - v0) as u32);
        let b = lift(other).shift_up((other.uexp - u0) as u32, (other.vexp - v0) as u32);
        RatFunc2::normalize(1, u0, v0, a.add(&b), union)
    }

    pub fn sub(&self, other: &RatFunc2) -> RatFunc2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc2) -> RatFunc2 {
        if self.is_zero() || other.is_zero() {
            return RatFunc2::zero();
        }
        let mut den = self.den.clone();
        for (&e, &m) in &other.den {
            *den.entry(e).or_insert(0) += m;
        }
        RatFunc2::normalize(
            self.sign * other.sign,
            self.uexp + other.uexp,
            self.vexp + other.vexp,
            self.num.mul(&other.num),
            den,
        )
    }

    pub fn scale(&self, r: &Rat) -> RatFunc2 {
        if r.is_zero() || self.is_zero() {
            return RatFunc2::zero();
        }
        let mut out = self.clone();
        if r.is_negative() {
            out.sign = -out.sign;
        }
        out.num = out.num.scale(&r.abs());
        out
    }

    /// Inverse for units whose numerator is a constant times a monomial and
    /// a product of binomials `1 - u^a v^b`; covers the twist units
    /// `(uv)^{+-1}` and the Heine denominators `1 - (uv)^i` of the Hodge
    /// pipeline.
    pub fn try_inv(&self) -> Option<RatFunc2> {
        if self.is_zero() {
            return None;
        }
        // Peel binomial factors out of the numerator; they flip into the
        // denominator multiset. Largest total degree first, so a factor
        // like 1 - u^2 v^2 comes off whole rather than splitting into
        // (1 - uv)(1 + uv) with a stuck cofactor.
        let mut rem = self.num.clone();
        let mut flipped = DenFactors2::new();
        'peel: while rem.terms().count() > 1 {
            let max_u = rem.terms().map(|(&(a, _), _)| a).max().unwrap();
            let max_v = rem.terms().map(|(&(_, b), _)| b).max().unwrap();
            for grade in (1..=max_u + max_v).rev() {
                for a in (grade.saturating_sub(max_v)..=grade.min(max_u)).rev() {
                    let b = grade - a;
                    if let Some(q) = rem.div_one_minus_mono(a, b) {
                        *flipped.entry((a, b)).or_insert(0) += 1;
                        rem = q;
                        continue 'peel;
                    }
                }
            }
            return None;
        }
        let (&(a, b), c) = rem.terms().next()?;
        let num = Poly2::constant(c.recip().abs()).mul(&self.den_expanded());
        Some(RatFunc2::normalize(
            self.sign * if c.is_negative() { -1 } else { 1 },
            -self.uexp - a as i64,
            -self.vexp - b as i64,
            num,
            flipped,
        ))
    }

    pub fn pow_i64(&self, e: i64) -> Option<RatFunc2> {
        let base = if e < 0 {
            self.try_inv()?
        } else {
            self.clone()
        };
        let mut result = RatFunc2::one();
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

    /// Substitute `(u, v) -> (u^s, v^s)`: the Adams operation on `Q(u,v)`.
    pub fn subst_pow(&self, s: u32) -> RatFunc2 {
        assert!(s >= 1);
        if self.is_zero() {
            return RatFunc2::zero();
        }
        let den = self
            .den
            .iter()
            .map(|(&(a, b), &m)| ((a * s, b * s), m))
            .collect();
        RatFunc2 {
            sign: self.sign,
            uexp: self.uexp * s as i64,
            vexp: self.vexp * s as i64,
            num: self.num.subst_pow(s),
            den,
        }
    }

    /// Specialize `u = v`, landing in the univariate representation.
    pub fn specialize_diagonal(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let num = self.num.specialize_diagonal();
        let den = self
            .den
            .iter()
            .fold(BTreeMap::new(), |mut acc: BTreeMap<u32, u32>, (&(a, b), &m)| {
                *acc.entry(a + b).or_insert(0) += m;
                acc
            });
        RatFunc::normalize(self.sign, self.uexp + self.vexp, num, den)
    }

    /// The polynomial value if the function is one.
    pub fn to_polynomial(&self) -> Option<Poly2> {
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        if !self.den.is_empty() || self.uexp < 0 || self.vexp < 0 {
            return None;
        }
        let mut p = self.num.shift_up(self.uexp as u32, self.vexp as u32);
        if self.sign < 0 {
            p = p.neg();
        }
        Some(p)
    }

    /// Lift a univariate rational function in `t` through `t = uv`.
    pub fn from_ratfunc_in_uv(f: &RatFunc) -> RatFunc2 {
        if f.is_zero() {
            return RatFunc2::zero();
        }
        let num = Poly2::from_poly_in_uv(f.numerator());
        let den = f
            .den_factors()
            .iter()
            .map(|(&i, &m)| ((i, i), m))
            .collect();
        RatFunc2 {
            sign: f.sign(),
            uexp: f.vexp(),
            vexp: f.vexp(),
            num,
            den,
        }
    }
}

impl PartialEq for RatFunc2 {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        if self.sign != other.sign || self.uexp != other.uexp || self.vexp != other.vexp {
            return false;
        }
        self.num.mul(&other.den_expanded()) == other.num.mul(&self.den_expanded())
    }
}

impl Eq for RatFunc2 {}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let mut top = String::new();
        for (name, e) in [("u", self.uexp), ("v", self.vexp)] {
            if e != 0 {
                if !top.is_empty() {
                    top.push('*');
                }
                top.push_str(&if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                });
            }
        }
        if !self.num.is_one() || top.is_empty() {
            if !top.is_empty() {
                top.push('*');
            }
            top.push_str(&format!("({})", self.num));
        }
        write!(f, "{top}")?;
        if !self.den.is_empty() {
            write!(f, "/(")?;
            let mut first = true;
            for (&(a, b), &m) in &self.den {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "(1 - {})", Poly2::monomial(Rat::from_integer(1.into()), (a, b)))?;
                if m > 1 {
                    write!(f, "^{m}")?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl CoeffRing for RatFunc2 {
    fn zero() -> Self {
        RatFunc2::zero()
    }
    fn one() -> Self {
        RatFunc2::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc2::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc2::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc2::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc2::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc2::neg(self)
    }
    fn try_inv(&self) -> Option<Self> {
        RatFunc2::try_inv(self)
    }
}

impl QAlgebra for RatFunc2 {
    fn from_rat(r: &Rat) -> Self {
        RatFunc2::constant(r.clone())
    }
    fn scale(&self, r: &Rat) -> Self {
        RatFunc2::scale(self, r)
    }
}

impl LambdaRing for RatFunc2 {
    fn adams(&self, m: u32) -> Self {
        self.subst_pow(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn uv_monomial_inverse() {
        let t = RatFunc2::monomial(1, 1);
        let inv = t.try_inv().unwrap();
        assert!(t.mul(&inv).is_one());
        assert_eq!(inv, RatFunc2::monomial(-1, -1));
    }

    #[test]
    fn normalization_cancels_mixed_factors() {
        // (1 - u^2 v^2) / (1 - u v) -> 1 + u v
        let n = Poly2::one_minus_mono(2, 2);
        let r = RatFunc2::normalize(1, 0, 0, n, [((1, 1), 1)].into_iter().collect());
        let p = r.to_polynomial().unwrap();
        assert_eq!(
            p,
            Poly2::one().add(&Poly2::monomial(rat(1), (1, 1)))
        );
    }

    #[test]
    fn diagonal_specialization_of_function() {
        // (1 - u^2 v)/(1 - u v)^2 at u = v -> (1 - v^3)/(1 - v^2)^2
        let r = RatFunc2::normalize(
            1,
            0,
            0,
            Poly2::one_minus_mono(2, 1),
            [((1, 1), 2)].into_iter().collect(),
        );
        let d = r.specialize_diagonal();
        let expect = RatFunc::normalize(
            1,
            0,
            crate::algebra::poly::PolyQ::one_minus_pow(3),
            [(2u32, 2u32)].into_iter().collect(),
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn lift_univariate_through_uv() {
        // t^2/(1 - t^3) -> (uv)^2/(1 - u^3 v^3)
        let f = RatFunc::normalize(
            1,
            2,
            crate::algebra::poly::PolyQ::one(),
            [(3u32, 1u32)].into_iter().collect(),
        );
        let g = RatFunc2::from_ratfunc_in_uv(&f);
        assert_eq!(
            g,
            RatFunc2::monomial(2, 2).mul(&RatFunc2::inv_one_minus_mono(3, 3, 1))
        );
    }
}
