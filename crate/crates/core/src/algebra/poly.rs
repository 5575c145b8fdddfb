//! Dense univariate polynomials over `Rat` in the variable `v`.
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial has an empty coefficient list.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{rat_pow, Rat};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = PolyQ { coeffs: vec![c] };
        p.trim();
        p
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = PolyQ { coeffs };
        p.trim();
        p
    }

    /// The monomial `c * v^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        PolyQ { coeffs }
    }

    /// The polynomial `1 - v^i`, `i >= 1`.
    pub fn one_minus_pow(i: u32) -> Self {
        assert!(i >= 1);
        let mut coeffs = vec![Rat::zero(); i as usize + 1];
        coeffs[0] = Rat::one();
        coeffs[i as usize] = -Rat::one();
        PolyQ { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        PolyQ::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &PolyQ) -> PolyQ {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        PolyQ::from_coeffs(coeffs)
    }

    pub fn scale(&self, r: &Rat) -> PolyQ {
        if r.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift_up(&self, k: usize) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    /// Divide by `v^k`; requires valuation `>= k`.
    pub fn shift_down(&self, k: usize) -> PolyQ {
        if k == 0 {
            return self.clone();
        }
        assert!(self.valuation().map_or(true, |val| val >= k));
        if self.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyQ {
        let mut result = PolyQ::one();
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

    /// Exact division; `Some(q)` iff `self = q * divisor`.
    pub fn div_exact(&self, divisor: &PolyQ) -> Option<PolyQ> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        let d = divisor.degree().unwrap();
        let n = self.degree().unwrap();
        if n < d {
            return None;
        }
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] / &lead;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let t = &c * b;
                    rem[k + j] -= t;
                }
            }
            quot[k] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(PolyQ::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Exact division by `1 - v^i` in linear time.
    pub fn div_one_minus_pow(&self, i: u32) -> Option<PolyQ> {
        assert!(i >= 1);
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        let i = i as usize;
        let n = self.degree().unwrap();
        if n < i {
            return None;
        }
        // self = q - v^i q, so q_k = c_k + q_{k-i} ascending, with the top
        // i relations c_k = -q_{k-i} acting as the remainder check.
        let mut quot = vec![Rat::zero(); n - i + 1];
        for k in 0..=n - i {
            let prev = if k >= i {
                quot[k - i].clone()
            } else {
                Rat::zero()
            };
            quot[k] = self.coeff(k) + prev;
        }
        for k in n - i + 1..=n {
            let prev = if k >= i && k - i < quot.len() {
                quot[k - i].clone()
            } else {
                Rat::zero()
            };
            if self.coeff(k) + prev != Rat::zero() {
                return None;
            }
        }
        Some(PolyQ::from_coeffs(quot))
    }

    /// Substitute `v -> v^s`, `s >= 1`.
    pub fn subst_pow(&self, s: u32) -> PolyQ {
        assert!(s >= 1);
        if self.is_zero() {
            return PolyQ::zero();
        }
        let s = s as usize;
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() * s];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * s] = c.clone();
        }
        PolyQ::from_coeffs(coeffs)
    }

    /// Coefficient reversal: `v^deg * self(1/v)`.
    pub fn reversed(&self) -> PolyQ {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        PolyQ::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at an integer power of the variable value: `self(x^j)`.
    pub fn eval_pow(&self, x: &Rat, j: i64) -> Rat {
        self.eval(&rat_pow(x, j))
    }
}

impl fmt::Display for PolyQ {
    /// Ascending exponents with explicit signs, e.g. `1 - 2*v + v^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn zero_polynomial_has_empty_coefficients() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, 0, 3, 0]).degree(), Some(2));
    }

    #[test]
    fn exact_division_detects_remainders() {
        // (1 - v^4) = (1 - v^2)(1 + v^2)
        let q = p(&[1, 0, 0, 0, -1]).div_exact(&p(&[1, 0, -1])).unwrap();
        assert_eq!(q, p(&[1, 0, 1]));
        assert!(p(&[1, 1, 1]).div_exact(&p(&[1, 0, -1])).is_none());
    }

    #[test]
    fn fast_division_by_one_minus_pow_agrees_with_general() {
        let n = p(&[1, -2, 3, 1]).mul(&PolyQ::one_minus_pow(3));
        assert_eq!(
            n.div_one_minus_pow(3).unwrap(),
            n.div_exact(&PolyQ::one_minus_pow(3)).unwrap()
        );
        assert!(p(&[1, 1]).div_one_minus_pow(2).is_none());
        assert!(p(&[2, 0, -1]).div_one_minus_pow(2).is_none());
    }

    #[test]
    fn display_uses_ascending_explicit_signs() {
        assert_eq!(p(&[1, -6, 15]).to_string(), "1 - 6*v + 15*v^2");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "-v + v^3");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }

    #[test]
    fn subst_and_reverse() {
        assert_eq!(p(&[1, 2, 1]).subst_pow(2), p(&[1, 0, 2, 0, 1]));
        assert_eq!(p(&[1, 0, -2]).reversed(), p(&[-2, 0, 1]));
    }
}
