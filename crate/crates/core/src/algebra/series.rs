//! Truncated power series over an abstract coefficient ring.
//!
//! A series stores coefficients `c_0..c_K`; the truncation order `K` is
//! explicit everywhere and binary operations truncate to the minimum of the
//! operand orders. Twisted (slope-ray) products live in `extract`; this is
//! the plain Cauchy-product ring.

use super::rat::Rat;
use super::ring::{CoeffRing, QAlgebra};
use crate::error::Error;

#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: CoeffRing> Series<C> {
    /// The zero series truncated at order `k`.
    pub fn zero(k: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); k + 1],
        }
    }

    /// The constant series 1 truncated at order `k`.
    pub fn one(k: usize) -> Self {
        let mut s = Series::zero(k);
        s.coeffs[0] = C::one();
        s
    }

    /// The monomial `c * x^d` truncated at order `k`, `d <= k`.
    pub fn monomial(c: C, d: usize, k: usize) -> Self {
        assert!(d <= k);
        let mut s = Series::zero(k);
        s.coeffs[d] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        Series { coeffs }
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        self.coeffs[k] = c;
    }

    /// Re-truncate to order `k <= K`.
    pub fn truncate(&self, k: usize) -> Series<C> {
        assert!(k <= self.order());
        Series {
            coeffs: self.coeffs[..=k].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        let k = self.order().min(other.order());
        Series {
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].add(&other.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series<C>) -> Series<C> {
        let k = self.order().min(other.order());
        Series {
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].sub(&other.coeffs[i]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Cauchy product truncated at the minimum order.
    pub fn mul(&self, other: &Series<C>) -> Series<C> {
        let k = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(k + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Series { coeffs }
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale_coeff(&self, c: &C) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplicative inverse, solving coefficients order by order; requires
    /// an invertible constant term.
    pub fn inv(&self) -> Result<Series<C>, Error> {
        let c0 = self.coeffs[0]
            .try_inv()
            .ok_or(Error::NonInvertibleConstantTerm)?;
        let k = self.order();
        let mut out = vec![C::zero(); k + 1];
        out[0] = c0.clone();
        for n in 1..=k {
            let mut acc = C::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() || out[n - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&out[n - i]));
            }
            out[n] = acc.mul(&c0).neg();
        }
        Ok(Series { coeffs: out })
    }
}

impl<C: QAlgebra> Series<C> {
    pub fn scale_rat(&self, r: &Rat) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio, Rat};

    fn s(coeffs: &[i64]) -> Series<Rat> {
        Series::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn product_truncates_to_min_order() {
        // (1+x)(1-x) at K=2 -> 1 - x^2
        let p = s(&[1, 1, 0]).mul(&s(&[1, -1, 0]));
        assert_eq!(p, s(&[1, 0, -1]));
        // operand orders 3 and 1 -> order 1
        assert_eq!(s(&[1, 1, 1, 1]).mul(&s(&[1, 2])).order(), 1);
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1-x) at K=3
        let inv = s(&[1, -1, 0, 0]).inv().unwrap();
        assert_eq!(inv, s(&[1, 1, 1, 1]));
    }

    #[test]
    fn inverse_of_one_plus_cx() {
        let c = ratio(2, 3);
        let f = Series::from_coeffs(vec![Rat::from_integer(1.into()), c.clone(), rat(0)]);
        let inv = f.inv().unwrap();
        assert_eq!(inv.coeff(1), &(-c.clone()));
        assert_eq!(inv.coeff(2), &(&c * &c));
    }

    #[test]
    fn zero_constant_term_is_not_invertible() {
        assert!(s(&[0, 1]).inv().is_err());
    }
}
