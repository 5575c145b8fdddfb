//! Euler pairing, compositions, the Zagier kernels, and the closed-form
//! rational functions attached to semistable weighted counts.
//!
//! The central objects are, for a character `alpha = (n, d)` on a genus-`g`
//! curve:
//!
//! * `poincare_mn`: the Poincare function of the weighted count of all
//!   rank-`n` bundles,
//!   `P_n(v) = (v^{2n} - 1) prod_{i=1..n} (1 - v^{2i-1})^{2g} / (1 - v^{2i})^2`;
//! * `poincare_r`: the Poincare function of the semistable weighted count,
//!   a sum over the `2^{n-1}` compositions of `n` weighted by the kernel
//!   `Psi_{n_*,d}(v^2)`;
//! * their two-variable analogues `hodge_pn` / `hodge_r` with `t = uv`.
//!
//! `recursion` holds the generic finite Harder-Narasimhan solver used on
//! semigroups where the decomposition sets are finite.

pub mod recursion;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::poly::PolyQ;
use crate::algebra::rat::{frac, is_integer, to_integer, Rat};
use crate::algebra::ratfunc::{DenFactors, RatFunc};
use crate::algebra::ratfunc2::RatFunc2;

/// A character `(rank, degree)`, rank `>= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CharPair {
    pub n: u32,
    pub d: i64,
}

impl CharPair {
    pub fn new(n: u32, d: i64) -> Self {
        assert!(n >= 1, "rank must be positive");
        CharPair { n, d }
    }

    /// Slope `d / n`.
    pub fn slope(&self) -> Rat {
        Rat::new(BigInt::from(self.d), BigInt::from(self.n))
    }

    /// Euler pairing `<a, b> = n d' - d n' + (1 - g) n n'`.
    pub fn euler_pairing(&self, other: &CharPair, genus: u32) -> i64 {
        let (n, d) = (self.n as i64, self.d);
        let (n2, d2) = (other.n as i64, other.d);
        n * d2 - d * n2 + (1 - genus as i64) * n * n2
    }

    /// Split into a primitive character and the scale: `self = k * gamma`
    /// with `gcd(n_gamma, d_gamma) = 1`.
    pub fn primitive(&self) -> (CharPair, u32) {
        let g = BigInt::from(self.n).gcd(&BigInt::from(self.d.abs()));
        let k: u32 = g.try_into().expect("gcd fits u32");
        (CharPair::new(self.n / k, self.d / k as i64), k)
    }

    pub fn scaled(&self, k: u32) -> CharPair {
        assert!(k >= 1);
        CharPair::new(self.n * k, self.d * k as i64)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive().1 == 1
    }
}

impl std::fmt::Display for CharPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.d)
    }
}

/// Free-function form of the Euler pairing.
pub fn euler_pairing(alpha: &CharPair, beta: &CharPair, genus: u32) -> i64 {
    alpha.euler_pairing(beta, genus)
}

/// An ordered composition `(n_1, ..., n_k)` of positive parts.
pub type Composition = Vec<u32>;

/// All `2^{n-1}` compositions of `n`, in lexicographic order.
pub fn compositions(n: u32) -> Vec<Composition> {
    assert!(n >= 1);
    fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=rem {
            cur.push(first);
            rec(rem - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Kernel exponent data shared by `Psi` and `Phi`: for each adjacent pair
/// `(n_i, n_{i+1})` the factor is
/// `t^{(n_i + n_{i+1}) * w_i} / (1 - t^{n_i + n_{i+1}})`
/// where `w_i` is a convention-dependent function of the fractional part of
/// `(n_1 + ... + n_i) d / n`.
fn kernel(parts: &[u32], d: i64, plus_convention: bool) -> RatFunc {
    assert!(!parts.is_empty() && parts.iter().all(|&p| p >= 1));
    let n: u32 = parts.iter().sum();
    let k = parts.len();
    let mut exponent = Rat::zero();
    let mut den = DenFactors::new();
    let mut partial: i64 = 0;
    for i in 0..k - 1 {
        partial += parts[i] as i64;
        let pair = parts[i] + parts[i + 1];
        let x = Rat::new(BigInt::from(partial) * BigInt::from(d), BigInt::from(n));
        let mut w = frac(&x);
        if plus_convention && w.is_zero() {
            w = Rat::one();
        }
        exponent += Rat::from_integer(BigInt::from(pair)) * w;
        *den.entry(pair).or_insert(0) += 1;
    }
    // The total exponent is always an integer: sum (n_i + n_{i+1}) s_i
    // telescopes to n * s_{k-1}, so the fractional contributions cancel
    // modulo 1.
    assert!(
        is_integer(&exponent),
        "kernel exponent {exponent} is not an integer for {parts:?}, d={d}"
    );
    let e: i64 = to_integer(&exponent).try_into().expect("exponent fits i64");
    let sign = if plus_convention && k % 2 == 0 { -1 } else { 1 };
    RatFunc::normalize(sign, e, PolyQ::one(), den)
}

/// Zagier kernel `Psi_{n_*,d}(t) = prod_{i<k}
/// t^{(n_i+n_{i+1}) {(n_1+...+n_i) d/n}} / (1 - t^{n_i+n_{i+1}})`
/// with `{x} = x - floor(x)`.
pub fn psi_coeff(parts: &[u32], d: i64) -> RatFunc {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<u32>, i64), RatFunc>>> = OnceLock::new();
    let n: i64 = parts.iter().map(|&p| p as i64).sum();
    let key = (parts.to_vec(), d.rem_euclid(n));
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let value = kernel(parts, key.1, false);
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| value.clone());
    value
}

/// Zagier kernel `Phi_{n_*,d}(t) = (-1)^{k-1} prod_{i<k}
/// t^{(n_i+n_{i+1}) {(n_1+...+n_i) d/n}_+} / (1 - t^{n_i+n_{i+1}})`.
///
/// `{x}_+` is the fractional part for non-integer `x` and `1` for integer
/// `x` (equivalently `1 - {-x}`); this is the convention validated by the
/// reversal identity `Phi_{n_*,d}(1/t) = Psi_{reverse(n_*),d}(t)`.
pub fn phi_coeff(parts: &[u32], d: i64) -> RatFunc {
    kernel(parts, d, true)
}

/// `sum_{i<j} n_i n_j` for a composition.
fn pairwise_product_sum(parts: &[u32]) -> i64 {
    let total: i64 = parts.iter().map(|&p| p as i64).sum();
    let squares: i64 = parts.iter().map(|&p| (p as i64) * (p as i64)).sum();
    (total * total - squares) / 2
}

/// Poincare function of the weighted count of all rank-`n` bundles:
/// `P_n(v) = (v^{2n} - 1) prod_{i=1..n} (1 - v^{2i-1})^{2g} / (1 - v^{2i})^2`.
pub fn poincare_mn(n: u32, genus: u32) -> RatFunc {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), RatFunc>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, genus)) {
        return hit.clone();
    }
    let mut num = PolyQ::one_minus_pow(2 * n);
    for i in 1..=n {
        num = num.mul(&PolyQ::one_minus_pow(2 * i - 1).pow(2 * genus));
    }
    let mut den = DenFactors::new();
    for i in 1..=n {
        den.insert(2 * i, 2);
    }
    let value = RatFunc::normalize(-1, 0, num, den);
    cache
        .lock()
        .unwrap()
        .entry((n, genus))
        .or_insert_with(|| value.clone());
    value
}

/// Poincare function of the semistable weighted count for `alpha = (n, d)`:
/// `P(r_alpha, v) = sum over compositions n_* of n of
/// v^{2(g-1) sum_{i<j} n_i n_j} Psi_{n_*,d}(v^2) P_{n_1}(v) ... P_{n_k}(v)`.
pub fn poincare_r(alpha: &CharPair, genus: u32) -> RatFunc {
    static CACHE: OnceLock<Mutex<HashMap<(u32, i64, u32), RatFunc>>> = OnceLock::new();
    let key = (alpha.n, alpha.d.rem_euclid(alpha.n as i64), genus);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    // Populate the P_n table before fanning out over compositions.
    for i in 1..=alpha.n {
        poincare_mn(i, genus);
    }
    let comps = compositions(alpha.n);
    let value = comps
        .par_iter()
        .map(|parts| {
            let twist = 2 * (genus as i64 - 1) * pairwise_product_sum(parts);
            let mut term = RatFunc::monomial(twist);
            term = term.mul(&psi_coeff(parts, alpha.d).subst_pow(2));
            for &p in parts {
                term = term.mul(&poincare_mn(p, genus));
            }
            term
        })
        .reduce(RatFunc::zero, |a, b| a.add(&b));
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| value.clone());
    value
}

/// Two-variable analogue of `poincare_mn`:
/// `P_n(u,v) = (u^n v^n - 1) prod_{i=1..n}
/// (1 - u^i v^{i-1})^g (1 - u^{i-1} v^i)^g / (1 - u^i v^i)^2`.
pub fn hodge_pn(n: u32, genus: u32) -> RatFunc2 {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), RatFunc2>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, genus)) {
        return hit.clone();
    }
    let mut num = crate::algebra::poly2::Poly2::one_minus_mono(n, n);
    for i in 1..=n {
        num = num.mul(&crate::algebra::poly2::Poly2::one_minus_mono(i, i - 1).pow(genus));
        num = num.mul(&crate::algebra::poly2::Poly2::one_minus_mono(i - 1, i).pow(genus));
    }
    let mut den = std::collections::BTreeMap::new();
    for i in 1..=n {
        den.insert((i, i), 2);
    }
    let value = RatFunc2::normalize(-1, 0, 0, num, den);
    cache
        .lock()
        .unwrap()
        .entry((n, genus))
        .or_insert_with(|| value.clone());
    value
}

/// Two-variable analogue of `poincare_r` with `t = uv`:
/// `R_alpha(u,v) = sum (uv)^{(g-1) sum_{i<j} n_i n_j} Psi_{n_*,d}(uv)
/// P_{n_1}(u,v) ... P_{n_k}(u,v)`.
pub fn hodge_r(alpha: &CharPair, genus: u32) -> RatFunc2 {
    static CACHE: OnceLock<Mutex<HashMap<(u32, i64, u32), RatFunc2>>> = OnceLock::new();
    let key = (alpha.n, alpha.d.rem_euclid(alpha.n as i64), genus);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    for i in 1..=alpha.n {
        hodge_pn(i, genus);
    }
    let comps = compositions(alpha.n);
    let value = comps
        .par_iter()
        .map(|parts| {
            let twist = (genus as i64 - 1) * pairwise_product_sum(parts);
            let mut term = RatFunc2::monomial(twist, twist);
            term = term.mul(&RatFunc2::from_ratfunc_in_uv(&psi_coeff(parts, alpha.d)));
            for &p in parts {
                term = term.mul(&hodge_pn(p, genus));
            }
            term
        })
        .reduce(RatFunc2::zero, |a, b| a.add(&b));
    cache
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| value.clone());
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio};

    #[test]
    fn euler_pairing_examples() {
        assert_eq!(
            CharPair::new(1, 0).euler_pairing(&CharPair::new(1, 1), 2),
            0
        );
        assert_eq!(
            CharPair::new(2, 1).euler_pairing(&CharPair::new(1, 0), 0),
            1
        );
        for (n, d, g) in [(2u32, 1i64, 0u32), (3, -2, 4), (5, 7, 1)] {
            let a = CharPair::new(n, d);
            assert_eq!(a.euler_pairing(&a, g), (1 - g as i64) * (n as i64).pow(2));
        }
    }

    #[test]
    fn compositions_are_lexicographic_and_complete() {
        assert_eq!(compositions(1), vec![vec![1]]);
        assert_eq!(compositions(2), vec![vec![1, 1], vec![2]]);
        assert_eq!(
            compositions(3),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]
        );
        for n in 1..=7u32 {
            assert_eq!(compositions(n).len(), 1usize << (n - 1));
        }
    }

    #[test]
    fn psi_examples() {
        // (1,1), d=1 -> t/(1-t^2)
        let p = psi_coeff(&[1, 1], 1);
        let expect = RatFunc::monomial(1).mul(&RatFunc::inv_one_minus_pow(2, 1));
        assert_eq!(p, expect);
        // (1,1), d=0 -> 1/(1-t^2)
        assert_eq!(psi_coeff(&[1, 1], 0), RatFunc::inv_one_minus_pow(2, 1));
        // (2,1), d=1 -> t^2/(1-t^3)
        let p = psi_coeff(&[2, 1], 1);
        let expect = RatFunc::monomial(2).mul(&RatFunc::inv_one_minus_pow(3, 1));
        assert_eq!(p, expect);
    }

    #[test]
    fn phi_examples_and_reversal() {
        // single part: empty product with sign (+1)
        assert!(phi_coeff(&[3], 0).is_one());
        // (1,1), d=0 -> -t^2/(1-t^2)
        let p = phi_coeff(&[1, 1], 0);
        let expect = RatFunc::monomial(2)
            .mul(&RatFunc::inv_one_minus_pow(2, 1))
            .neg();
        assert_eq!(p, expect);
        // reversal identity for all compositions of n <= 5
        for n in 1..=5u32 {
            for parts in compositions(n) {
                for d in 0..n as i64 {
                    let mut rev = parts.clone();
                    rev.reverse();
                    assert_eq!(
                        phi_coeff(&parts, d).subst_inv(),
                        psi_coeff(&rev, d),
                        "reversal fails for {parts:?}, d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn poincare_mn_small_ranks() {
        // n=1, g=0: -1/(1-v^2)
        assert_eq!(
            poincare_mn(1, 0),
            RatFunc::inv_one_minus_pow(2, 1).neg()
        );
        // n=1, g=1: (v-1)/(v+1) = -(1-v)^2/(1-v^2)
        let expect = RatFunc::normalize(
            -1,
            0,
            PolyQ::one_minus_pow(1).pow(2),
            [(2u32, 1u32)].into_iter().collect(),
        );
        assert_eq!(poincare_mn(1, 1), expect);
        // n=1, general g: (v^2-1)(1-v)^{2g}/(1-v^2)^2
        for g in 0..=4u32 {
            let raw = RatFunc::normalize(
                -1,
                0,
                PolyQ::one_minus_pow(2).mul(&PolyQ::one_minus_pow(1).pow(2 * g)),
                [(2u32, 2u32)].into_iter().collect(),
            );
            assert_eq!(poincare_mn(1, g), raw);
        }
    }

    #[test]
    fn poincare_r_rank_one_is_mn() {
        for g in 0..=3 {
            for d in [-3i64, 0, 1, 7] {
                assert_eq!(poincare_r(&CharPair::new(1, d), g), poincare_mn(1, g));
            }
        }
    }

    #[test]
    fn poincare_r_two_one_genus_zero_vanishes() {
        assert!(poincare_r(&CharPair::new(2, 1), 0).is_zero());
    }

    #[test]
    fn poincare_r_two_one_genus_one() {
        // (v-1)/(v+1)
        let expect = RatFunc::normalize(
            -1,
            0,
            PolyQ::one_minus_pow(1).pow(2),
            [(2u32, 1u32)].into_iter().collect(),
        );
        assert_eq!(poincare_r(&CharPair::new(2, 1), 1), expect);
    }

    #[test]
    fn poincare_r_depends_on_degree_mod_rank() {
        for g in [0u32, 2] {
            for n in [2u32, 3] {
                for d in 0..n as i64 {
                    let a = poincare_r(&CharPair::new(n, d), g);
                    let b = poincare_r(&CharPair::new(n, d + n as i64), g);
                    let c = poincare_r(&CharPair::new(n, d - 3 * n as i64), g);
                    assert_eq!(a, b);
                    assert_eq!(a, c);
                }
            }
        }
    }

    #[test]
    fn newstead_identity_with_jacobian_factor() {
        // (v^2-1) P(r_{(2,1)}) = (1-v)^{2g} [(1-v^3)^{2g} - v^{2g}(1-v)^{2g}]
        //                        / ((1-v^2)(1-v^4))
        for g in [2u32, 3, 4] {
            let lhs = RatFunc::from_poly(PolyQ::one_minus_pow(2))
                .neg()
                .mul(&poincare_r(&CharPair::new(2, 1), g));
            let num = PolyQ::one_minus_pow(3)
                .pow(2 * g)
                .sub(&PolyQ::one_minus_pow(1).pow(2 * g).shift_up(2 * g as usize))
                .mul(&PolyQ::one_minus_pow(1).pow(2 * g));
            let rhs = RatFunc::normalize(
                1,
                0,
                num,
                [(2u32, 1u32), (4u32, 1u32)].into_iter().collect(),
            );
            assert_eq!(lhs, rhs, "genus {g}");
        }
    }

    #[test]
    fn hodge_pn_specializes_to_poincare() {
        for n in 1..=3u32 {
            for g in 0..=3u32 {
                assert_eq!(hodge_pn(n, g).specialize_diagonal(), poincare_mn(n, g));
            }
        }
    }

    #[test]
    fn hodge_r_examples() {
        assert!(hodge_r(&CharPair::new(2, 1), 0).is_zero());
        for g in 0..=2u32 {
            assert_eq!(
                hodge_r(&CharPair::new(2, 1), g).specialize_diagonal(),
                poincare_r(&CharPair::new(2, 1), g)
            );
        }
        // (uv-1) R_{(1,d)} = (1-u)^g (1-v)^g
        for g in 0..=3u32 {
            let lhs = RatFunc2::from_poly(crate::algebra::poly2::Poly2::one_minus_mono(1, 1))
                .neg()
                .mul(&hodge_r(&CharPair::new(1, 5), g));
            let expect = RatFunc2::from_poly(
                crate::algebra::poly2::Poly2::one_minus_mono(1, 0)
                    .pow(g)
                    .mul(&crate::algebra::poly2::Poly2::one_minus_mono(0, 1).pow(g)),
            );
            assert_eq!(lhs, expect);
        }
    }

    #[test]
    fn slope_and_primitive() {
        assert_eq!(CharPair::new(4, 6).slope(), ratio(3, 2));
        assert_eq!(
            CharPair::new(4, 6).primitive(),
            (CharPair::new(2, 3), 2)
        );
        assert_eq!(
            CharPair::new(3, 0).primitive(),
            (CharPair::new(1, 0), 3)
        );
        assert_eq!(
            CharPair::new(4, -6).primitive(),
            (CharPair::new(2, -3), 2)
        );
        let _ = rat(0);
    }
}
