//! Sparse bivariate polynomials over `Rat` in the variables `(u, v)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::PolyQ;
use super::rat::Rat;

/// Monomial exponents `(u^a, v^b)`.
pub type Exp2 = (u32, u32);

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<Exp2, Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly2::monomial(Rat::one(), (0, 0))
    }

    pub fn constant(c: Rat) -> Self {
        Poly2::monomial(c, (0, 0))
    }

    pub fn monomial(c: Rat, e: Exp2) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly2 { terms }
    }

    /// The binomial `1 - u^a v^b`, `(a, b) != (0, 0)`.
    pub fn one_minus_mono(a: u32, b: u32) -> Self {
        assert!(a > 0 || b > 0);
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), Rat::one());
        terms.insert((a, b), -Rat::one());
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp2, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp2) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    /// The monomial of least total degree (graded-lex tie break), with its
    /// coefficient.
    pub fn min_term(&self) -> Option<(Exp2, Rat)> {
        self.terms
            .iter()
            .min_by_key(|(&(a, b), _)| (a + b, a))
            .map(|(&e, c)| (e, c.clone()))
    }

    /// Componentwise minimal exponents over all terms; the monomial content.
    pub fn exponent_content(&self) -> Exp2 {
        let mut ca = u32::MAX;
        let mut cb = u32::MAX;
        for &(a, b) in self.terms.keys() {
            ca = ca.min(a);
            cb = cb.min(b);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (ca, cb)
        }
    }

    fn insert_add(terms: &mut BTreeMap<Exp2, Rat>, e: Exp2, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            Self::insert_add(&mut terms, e, c.clone());
        }
        Poly2 { terms }
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                Self::insert_add(&mut terms, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Poly2 { terms }
    }

    pub fn scale(&self, r: &Rat) -> Poly2 {
        if r.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    /// Multiply by the monomial `u^a v^b`.
    pub fn shift_up(&self, a: u32, b: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    /// Divide by the monomial `u^a v^b`; requires divisibility of every term.
    pub fn shift_down(&self, a: u32, b: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| {
                    assert!(x >= a && y >= b, "monomial content underflow");
                    ((x - a, y - b), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut result = Poly2::one();
        let mut base = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        result
    }

    /// Exact division by `1 - u^a v^b`; `Some(q)` iff the division leaves no
    /// remainder.
    ///
    /// Works monomial-by-monomial in ascending graded-lex order: the minimal
    /// remaining term of the dividend must be the minimal term of
    /// `q * (1 - u^a v^b)`, because `u^a v^b * q` only contributes strictly
    /// larger monomials.
    pub fn div_one_minus_mono(&self, a: u32, b: u32) -> Option<Poly2> {
        assert!(a > 0 || b > 0);
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        let max_deg = self.total_degree().unwrap();
        if max_deg < a + b {
            return None;
        }
        let quot_cap = max_deg - (a + b);
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Exp2, Rat> = BTreeMap::new();
        while !rem.is_empty() {
            let (e, c) = rem
                .iter()
                .min_by_key(|(&(x, y), _)| (x + y, x))
                .map(|(&e, c)| (e, c.clone()))
                .unwrap();
            if e.0 + e.1 > quot_cap {
                return None;
            }
            Self::insert_add(&mut quot, e, c.clone());
            // rem -= c * x^e * (1 - u^a v^b)
            Self::insert_add(&mut rem, e, -c.clone());
            Self::insert_add(&mut rem, (e.0 + a, e.1 + b), c);
        }
        Some(Poly2 { terms: quot })
    }

    /// Substitute `(u, v) -> (u^s, v^s)`.
    pub fn subst_pow(&self, s: u32) -> Poly2 {
        assert!(s >= 1);
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a * s, b * s), c.clone()))
                .collect(),
        }
    }

    /// Specialize `u = v`, producing a univariate polynomial.
    pub fn specialize_diagonal(&self) -> PolyQ {
        let mut acc = PolyQ::zero();
        for (&(a, b), c) in &self.terms {
            acc = acc.add(&PolyQ::monomial(c.clone(), (a + b) as usize));
        }
        acc
    }

    /// Lift a univariate polynomial in `t` through `t = uv`.
    pub fn from_poly_in_uv(p: &PolyQ) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert((k as u32, k as u32), c.clone());
            }
        }
        Poly2 { terms }
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Exp2, &Rat)> = self.terms.iter().collect();
        entries.sort_by_key(|(&(a, b), _)| (a + b, a, b));
        let mut first = true;
        for (&(a, b), c) in entries {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one() && (a, b) != (0, 0);
            if !unit {
                write!(f, "{mag}")?;
            }
            let mut star = !unit;
            for (name, e) in [("u", a), ("v", b)] {
                if e == 0 {
                    continue;
                }
                if star {
                    write!(f, "*")?;
                }
                star = true;
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
