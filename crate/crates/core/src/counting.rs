//! Concrete-curve pipeline over finite fields.
//!
//! Ingests a validated zeta numerator of a curve over `F_q`, computes the
//! weighted counts `m_n` and `r_alpha` at every needed field extension via
//! Newton's identities (no root-finding: all arithmetic stays rational),
//! then runs the twisted extraction with extension-indexed coefficient
//! vectors to produce exact integer counts `a_{k gamma}(F_{q^j})` of
//! absolutely stable bundles, and `s`-counts by Moebius inversion.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Deserialize;

use crate::algebra::rat::{is_integer, rat, rat_pow, to_integer, Rat};
use crate::algebra::ring::{CoeffRing, LambdaRing, QAlgebra};
use crate::error::Error;
use crate::extract::{stable_series, SlopeRay, TwistedSeries};
use crate::hnzagier::{compositions, psi_coeff, CharPair};
use crate::lambda::moebius;

/// Validated zeta data of a curve: `Z_X(t) = P(t) / ((1-t)(1-qt))` with
/// integer numerator coefficients `a_0..a_{2g}`, `a_0 = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct ZetaData {
    q: BigInt,
    genus: u32,
    numerator: Vec<BigInt>,
}

impl ZetaData {
    /// Build and validate from a base field size and numerator coefficients.
    pub fn new(q: u64, genus: u32, numerator: Vec<BigInt>) -> Result<Self, Error> {
        check_prime_power(q)?;
        let z = ZetaData {
            q: BigInt::from(q),
            genus,
            numerator,
        };
        z.validate()?;
        Ok(z)
    }

    /// Derive the numerator from point counts `N_1..N_g` over
    /// `F_q..F_{q^g}` via inverse Newton identities plus the functional
    /// equation.
    pub fn from_point_counts(q: u64, genus: u32, counts: &[i64]) -> Result<Self, Error> {
        check_prime_power(q)?;
        if counts.len() != genus as usize {
            return Err(Error::InvalidParameter(format!(
                "need exactly genus={genus} point counts, got {}",
                counts.len()
            )));
        }
        let g = genus as usize;
        let qb = BigInt::from(q);
        // p_j = q^j + 1 - N_j
        let p: Vec<BigInt> = (1..=g)
            .map(|j| qb.pow(j as u32) + 1 - BigInt::from(counts[j - 1]))
            .collect();
        let e = inverse_newton(&p, g);
        let mut numerator = vec![BigInt::one()];
        for (k, ek) in e.iter().enumerate() {
            let sign = if (k + 1) % 2 == 1 { -1 } else { 1 };
            numerator.push(ek * sign);
        }
        // functional equation fills the top half: a_{2g-i} = q^{g-i} a_i
        for i in (0..g).rev() {
            let coeff = &numerator[i] * qb.pow((g - i) as u32);
            numerator.push(coeff);
        }
        let z = ZetaData {
            q: qb,
            genus,
            numerator,
        };
        z.validate()?;
        Ok(z)
    }

    /// Check shape, the functional-equation symmetry
    /// `a_{2g-i} = q^{g-i} a_i`, and `P(1) > 0`.
    pub fn validate(&self) -> Result<(), Error> {
        let g = self.genus as usize;
        if self.numerator.len() != 2 * g + 1 || !self.numerator[0].is_one() {
            return Err(Error::ZetaShape);
        }
        for i in 0..=g {
            let lhs = &self.numerator[2 * g - i];
            let rhs = &self.numerator[i] * self.q.pow((g - i) as u32);
            if *lhs != rhs {
                return Err(Error::ZetaSymmetry { index: i });
            }
        }
        if !self.numerator_at_one().is_positive() {
            return Err(Error::ZetaClassNumber);
        }
        Ok(())
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// `P(1)`, the class number of the curve.
    pub fn numerator_at_one(&self) -> BigInt {
        self.numerator.iter().sum()
    }

    /// Power sums `p_1..p_m` of the inverse roots of the numerator.
    fn power_sums(&self, m: usize) -> Vec<BigInt> {
        // P(t) = prod (1 - w_i t) = sum (-1)^j e_j t^j, so e_j = (-1)^j a_j.
        let deg = 2 * self.genus as usize;
        let e = |j: usize| -> BigInt {
            if j > deg {
                BigInt::zero()
            } else if j % 2 == 0 {
                self.numerator[j].clone()
            } else {
                -self.numerator[j].clone()
            }
        };
        let mut p: Vec<BigInt> = Vec::with_capacity(m);
        for k in 1..=m {
            // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
            let mut acc = BigInt::zero();
            for i in 1..k {
                let term = e(i) * &p[k - i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let top = e(k) * BigInt::from(k);
            if k % 2 == 1 {
                acc += top;
            } else {
                acc -= top;
            }
            p.push(acc);
        }
        p
    }

    /// Exact number of rational points over `F_{q^j}`:
    /// `N_j = q^j + 1 - p_j`.
    pub fn point_count(&self, j: u32) -> BigInt {
        assert!(j >= 1);
        let p = self.power_sums(j as usize);
        self.q.pow(j) + 1 - &p[j as usize - 1]
    }

    /// The zeta data of the same curve over `F_{q^j}`: power sums dilate
    /// `p_k -> p_{jk}` and the numerator is rebuilt by inverse Newton.
    pub fn extension(&self, j: u32) -> ZetaData {
        assert!(j >= 1);
        if j == 1 {
            return self.clone();
        }
        let g = self.genus as usize;
        let base = self.power_sums(g * j as usize);
        let dilated: Vec<BigInt> = (1..=g).map(|k| base[k * j as usize - 1].clone()).collect();
        let e = inverse_newton(&dilated, g);
        let qj = self.q.pow(j);
        let mut numerator = vec![BigInt::one()];
        for (k, ek) in e.iter().enumerate() {
            let sign = if (k + 1) % 2 == 1 { -1 } else { 1 };
            numerator.push(ek * sign);
        }
        for i in (0..g).rev() {
            let coeff = &numerator[i] * qj.pow((g - i) as u32);
            numerator.push(coeff);
        }
        let z = ZetaData {
            q: qj,
            genus: self.genus,
            numerator,
        };
        debug_assert!(z.validate().is_ok());
        z
    }

    /// Evaluate the numerator at a rational point.
    pub fn numerator_eval(&self, t: &Rat) -> Rat {
        let mut acc = rat(0);
        for a in self.numerator.iter().rev() {
            acc = acc * t + Rat::from_integer(a.clone());
        }
        acc
    }

    /// `Z_X(t) = P(t) / ((1-t)(1-qt))` away from the poles.
    pub fn zeta_eval(&self, t: &Rat) -> Rat {
        let one = rat(1);
        let d1 = &one - t;
        let d2 = &one - Rat::from_integer(self.q.clone()) * t;
        assert!(
            !num_traits::Zero::is_zero(&d1) && !num_traits::Zero::is_zero(&d2),
            "zeta evaluated at a pole"
        );
        self.numerator_eval(t) / (d1 * d2)
    }
}

/// Recover `e_1..e_m` from power sums `p_1..p_m` by inverse Newton
/// identities: `k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`.
fn inverse_newton(p: &[BigInt], m: usize) -> Vec<BigInt> {
    assert!(p.len() >= m);
    let mut e: Vec<BigInt> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let prev = if i == k { BigInt::one() } else { e[k - i - 1].clone() };
            let term = prev * &p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(k));
        assert!(r.is_zero(), "inverse Newton produced a non-integer e_{k}");
        e.push(q);
    }
    e
}

/// Trial-division prime-power check, exact for `q < 2^40`.
fn check_prime_power(q: u64) -> Result<(), Error> {
    if q < 2 {
        return Err(Error::NotPrimePower { q });
    }
    let mut smallest = None;
    let mut d = 2u64;
    while d * d <= q && d <= 1 << 20 {
        if q % d == 0 {
            smallest = Some(d);
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    match smallest {
        None => Ok(()), // no factor below 2^20: treat as prime
        Some(p) => {
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
            }
            if rest == 1 {
                Ok(())
            } else {
                Err(Error::NotPrimePower { q })
            }
        }
    }
}

/// Weighted count of all rank-`n` bundles over the field of `self`:
/// `m_n = [P(1)/(q-1)] q^{(n^2-1)(g-1)} Z(q^{-2}) ... Z(q^{-n})`.
pub fn m_value_at(z: &ZetaData, n: u32) -> Rat {
    assert!(n >= 1);
    let q = Rat::from_integer(z.q().clone());
    let mut m = Rat::from_integer(z.numerator_at_one()) / (&q - rat(1));
    let exp = ((n as i64) * (n as i64) - 1) * (z.genus() as i64 - 1);
    m *= rat_pow(&q, exp);
    for i in 2..=n as i64 {
        m *= z.zeta_eval(&rat_pow(&q, -i));
    }
    m
}

/// `m_n` over the extension `F_{q^ext}`.
pub fn m_value(n: u32, z: &ZetaData, ext: u32) -> Rat {
    m_value_at(&z.extension(ext), n)
}

/// Semistable weighted count `r_alpha` over the field of `self`: the
/// composition sum `sum Q^{(g-1) sum_{i<j} n_i n_j} Psi_{n_*,d}(Q)
/// m_{n_1} ... m_{n_k}`.
pub fn r_value_at(z: &ZetaData, alpha: &CharPair) -> Rat {
    let q = Rat::from_integer(z.q().clone());
    let g = z.genus() as i64;
    let m: Vec<Rat> = (1..=alpha.n).map(|n| m_value_at(z, n)).collect();
    let mut acc = rat(0);
    for parts in compositions(alpha.n) {
        let total: i64 = parts.iter().map(|&p| p as i64).sum();
        let squares: i64 = parts.iter().map(|&p| (p as i64) * (p as i64)).sum();
        let pps = (total * total - squares) / 2;
        let mut term = rat_pow(&q, (g - 1) * pps);
        term *= psi_coeff(&parts, alpha.d)
            .eval(&q)
            .expect("Psi has no pole at q >= 2");
        for &p in &parts {
            term *= m[p as usize - 1].clone();
        }
        acc += term;
    }
    acc
}

/// `r_alpha` over the extension `F_{q^ext}`.
pub fn r_value(alpha: &CharPair, z: &ZetaData, ext: u32) -> Rat {
    r_value_at(&z.extension(ext), alpha)
}

/// A finite vector of exact values indexed by field extension: entry `j`
/// (1-based) lives over `F_{q^j}`.
#[derive(Clone, PartialEq, Debug)]
pub struct CSeqVec {
    q: u64,
    entries: Vec<Rat>,
}

impl CSeqVec {
    pub fn new(q: u64, entries: Vec<Rat>) -> Self {
        assert!(!entries.is_empty());
        CSeqVec { q, entries }
    }

    /// The Lefschetz vector `(q^j)_{j=1..t}`.
    pub fn lefschetz(q: u64, t: u32) -> Self {
        let qb = BigInt::from(q);
        CSeqVec::new(
            q,
            (1..=t).map(|j| Rat::from_integer(qb.pow(j))).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, j: u32) -> Option<&Rat> {
        assert!(j >= 1);
        self.entries.get(j as usize - 1)
    }

    /// Index dilation `psi_m(s)_j = s_{mj}`; only defined down to the
    /// truncated length `floor(len / m) >= 1`.
    pub fn dilate(&self, m: u32) -> CSeqVec {
        assert!(m >= 1);
        let new_len = self.entries.len() / m as usize;
        assert!(
            new_len >= 1,
            "Adams dilation by {m} exhausts a vector of length {}",
            self.entries.len()
        );
        CSeqVec::new(
            self.q,
            (1..=new_len)
                .map(|j| self.entries[j * m as usize - 1].clone())
                .collect(),
        )
    }

    fn zip(&self, other: &CSeqVec, f: impl Fn(&Rat, &Rat) -> Rat) -> CSeqVec {
        assert_eq!(self.q, other.q, "mixed base fields");
        let len = self.len().min(other.len());
        CSeqVec::new(
            self.q,
            (0..len)
                .map(|i| f(&self.entries[i], &other.entries[i]))
                .collect(),
        )
    }

    fn map(&self, f: impl Fn(&Rat) -> Rat) -> CSeqVec {
        CSeqVec::new(self.q, self.entries.iter().map(f).collect())
    }
}

/// A coefficient for the counting extraction: either a constant (an
/// Adams-fixed rational, conceptually an infinite constant sequence) or a
/// finite extension-indexed vector.
#[derive(Clone, Debug)]
pub enum SeqElem {
    Const(Rat),
    Seq(CSeqVec),
}

impl SeqElem {
    pub fn entry(&self, j: u32) -> Option<Rat> {
        match self {
            SeqElem::Const(c) => Some(c.clone()),
            SeqElem::Seq(v) => v.entry(j).cloned(),
        }
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            SeqElem::Const(_) => None,
            SeqElem::Seq(v) => Some(v.len()),
        }
    }

    fn binop(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> SeqElem {
        match (self, other) {
            (SeqElem::Const(a), SeqElem::Const(b)) => SeqElem::Const(f(a, b)),
            (SeqElem::Const(a), SeqElem::Seq(v)) => SeqElem::Seq(v.map(|x| f(a, x))),
            (SeqElem::Seq(v), SeqElem::Const(b)) => SeqElem::Seq(v.map(|x| f(x, b))),
            (SeqElem::Seq(a), SeqElem::Seq(b)) => SeqElem::Seq(a.zip(b, f)),
        }
    }
}

impl PartialEq for SeqElem {
    /// Value equality on the overlapping window.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SeqElem::Const(a), SeqElem::Const(b)) => a == b,
            (SeqElem::Const(c), SeqElem::Seq(v)) | (SeqElem::Seq(v), SeqElem::Const(c)) => {
                v.entries.iter().all(|x| x == c)
            }
            (SeqElem::Seq(a), SeqElem::Seq(b)) => {
                let len = a.len().min(b.len());
                a.q == b.q && a.entries[..len] == b.entries[..len]
            }
        }
    }
}

impl CoeffRing for SeqElem {
    fn zero() -> Self {
        SeqElem::Const(rat(0))
    }
    fn one() -> Self {
        SeqElem::Const(rat(1))
    }
    fn is_zero(&self) -> bool {
        match self {
            SeqElem::Const(c) => num_traits::Zero::is_zero(c),
            SeqElem::Seq(v) => v.entries.iter().all(|x| num_traits::Zero::is_zero(x)),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a - b)
    }
    fn mul(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a * b)
    }
    fn neg(&self) -> Self {
        match self {
            SeqElem::Const(c) => SeqElem::Const(-c),
            SeqElem::Seq(v) => SeqElem::Seq(v.map(|x| -x)),
        }
    }
    fn try_inv(&self) -> Option<Self> {
        match self {
            SeqElem::Const(c) => {
                if num_traits::Zero::is_zero(c) {
                    None
                } else {
                    Some(SeqElem::Const(c.recip()))
                }
            }
            SeqElem::Seq(v) => {
                if v.entries.iter().any(|x| num_traits::Zero::is_zero(x)) {
                    None
                } else {
                    Some(SeqElem::Seq(v.map(|x| x.recip())))
                }
            }
        }
    }
}

impl QAlgebra for SeqElem {
    fn from_rat(r: &Rat) -> Self {
        SeqElem::Const(r.clone())
    }
}

impl LambdaRing for SeqElem {
    /// Constants are Adams-fixed; vectors dilate.
    fn adams(&self, m: u32) -> Self {
        match self {
            SeqElem::Const(c) => SeqElem::Const(c.clone()),
            SeqElem::Seq(v) => SeqElem::Seq(v.dilate(m)),
        }
    }
}

/// One exact count `a_{k gamma}(F_{q^ext})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountEntry {
    pub k: u32,
    pub ext: u32,
    pub value: BigInt,
}

/// Integer counts of absolutely stable bundles along a slope ray.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub gamma: CharPair,
    pub genus: u32,
    pub q: u64,
    /// Entries for `k <= k_max`, `ext <= t / k_max`.
    pub entries: Vec<CountEntry>,
}

impl CountTable {
    pub fn get(&self, k: u32, ext: u32) -> Option<&BigInt> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.ext == ext)
            .map(|e| &e.value)
    }
}

fn base_q_u64(z: &ZetaData) -> u64 {
    z.q().try_into().expect("base field size fits u64")
}

/// Exact counts `a_{k gamma}(F_{q^j})` for `k <= k_max`, `j <= t / k_max`,
/// by the twisted extraction over extension-indexed vectors (twist unit =
/// Lefschetz vector, divisor entries `1 - q^j`).
///
/// Requires `t >= k_max` (the capacity rule `t >= k_max * j_max` with at
/// least one output extension); Adams dilation would silently truncate
/// otherwise.
pub fn stable_counts(
    ray: SlopeRay,
    z: &ZetaData,
    k_max: u32,
    t: u32,
) -> Result<CountTable, Error> {
    assert!(k_max >= 1);
    if t < k_max {
        return Err(Error::Capacity {
            needed: k_max as usize,
            available: t as usize,
        });
    }
    debug_assert_eq!(ray.genus(), z.genus(), "ray genus must match the curve");
    let q = base_q_u64(z);
    let exts: Vec<ZetaData> = (1..=t).map(|j| z.extension(j)).collect();
    let unit = SeqElem::Seq(CSeqVec::lefschetz(q, t));
    let mut r = TwistedSeries::one(ray, &unit, k_max as usize)?;
    for k in 1..=k_max {
        let alpha = ray.gamma().scaled(k);
        let entries: Vec<Rat> = exts
            .par_iter()
            .map(|zj| r_value_at(zj, &alpha))
            .collect();
        r.set_coeff(k as usize, SeqElem::Seq(CSeqVec::new(q, entries)));
    }
    let a = stable_series(&r, &unit)?;
    let j_out = t / k_max;
    let mut entries = Vec::new();
    for k in 1..=k_max {
        for j in 1..=j_out {
            let value = a
                .coeff(k as usize)
                .entry(j)
                .expect("capacity rule guarantees the entry");
            if !is_integer(&value) {
                return Err(Error::NonIntegerCount {
                    n: ray.gamma().n * k,
                    d: ray.gamma().d * k as i64,
                    ext: j as usize,
                    value: value.to_string(),
                });
            }
            entries.push(CountEntry {
                k,
                ext: j,
                value: to_integer(&value),
            });
        }
    }
    Ok(CountTable {
        gamma: ray.gamma(),
        genus: ray.genus(),
        q,
        entries,
    })
}

/// Single count `a_alpha(F_{q^ext})`.
pub fn a_value(alpha: &CharPair, z: &ZetaData, ext: u32) -> Result<BigInt, Error> {
    let (ray, k) = SlopeRay::through(*alpha, z.genus());
    let table = stable_counts(ray, z, k, k * ext)?;
    Ok(table.get(k, ext).expect("entry within capacity").clone())
}

/// Number of stable bundles with character `target` and endomorphism field
/// `F_{q^r}`, by Moebius inversion:
/// `r * s_{target, r} = sum_{e | r} mu(r/e) a_{target/r}(F_{q^e})`.
///
/// Zero when `target / r` is not integral.
pub fn s_count(target: &CharPair, r: u32, z: &ZetaData) -> Result<BigInt, Error> {
    assert!(r >= 1);
    if target.n % r != 0 || target.d.rem_euclid(r as i64) != 0 {
        return Ok(BigInt::zero());
    }
    let base = CharPair::new(target.n / r, target.d / r as i64);
    let (ray, k) = SlopeRay::through(base, z.genus());
    let table = stable_counts(ray, z, k, k * r)?;
    let mut acc = BigInt::zero();
    for e in 1..=r {
        if r % e != 0 {
            continue;
        }
        let mu = moebius(r / e);
        if mu == 0 {
            continue;
        }
        let a = table.get(k, e).expect("entry within capacity");
        acc += a * BigInt::from(mu);
    }
    let (s, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(r));
    if !rem.is_zero() || s.is_negative() {
        return Err(Error::InvalidSCount {
            n: target.n,
            d: target.d,
            r,
            value: format!("{acc}/{r}"),
        });
    }
    Ok(s)
}

/// JSON representation of the zeta input file: either the numerator or the
/// first `genus` point counts.
#[derive(Deserialize)]
struct ZetaFileRepr {
    q: u64,
    genus: u32,
    #[serde(default)]
    zeta_numerator: Option<Vec<i64>>,
    #[serde(default)]
    point_counts: Option<Vec<i64>>,
}

/// Parse `{"q":..,"genus":..,"zeta_numerator":[..]}` or
/// `{"q":..,"genus":..,"point_counts":[..]}`.
pub fn zeta_from_json(text: &str) -> Result<ZetaData, Error> {
    let repr: ZetaFileRepr = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParameter(format!("zeta file: {e}")))?;
    match (repr.zeta_numerator, repr.point_counts) {
        (Some(num), None) => ZetaData::new(
            repr.q,
            repr.genus,
            num.into_iter().map(BigInt::from).collect(),
        ),
        (None, Some(counts)) => ZetaData::from_point_counts(repr.q, repr.genus, &counts),
        (Some(_), Some(_)) => Err(Error::InvalidParameter(
            "zeta file must give either zeta_numerator or point_counts, not both".into(),
        )),
        (None, None) => Err(Error::InvalidParameter(
            "zeta file must give zeta_numerator or point_counts".into(),
        )),
    }
}
