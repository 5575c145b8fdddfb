//! Lambda-ring engine on truncated series: Adams operations, plethystic
//! Exp/Log, Pow and its product expansion, the Moebius function, and the
//! Heine series.
//!
//! Exp and Log go through the formal exponential and logarithm of the
//! truncated series ring, which terminate at the truncation order for any
//! coefficient ring that is an algebra over the rationals:
//!
//! ```text
//! Exp(f) = exp( sum_{k>=1} psi_k(f)/k ),          f with zero constant term
//! Log(f) = sum_{k>=1} mu(k)/k psi_k(log(f)),      f with constant term 1
//! Pow(f, g) = Exp(g Log(f))
//! ```

use crate::algebra::rat::{rat, Rat};
use crate::algebra::ring::{LambdaRing, QAlgebra};
use crate::algebra::series::Series;
use crate::algebra::RatFunc;
use crate::error::Error;

/// Classical Moebius function.
pub fn moebius(n: u32) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Adams operation on a truncated series: coefficient `c_k` at degree `k`
/// maps to `psi_m(c_k)` at degree `m k`; degrees beyond the truncation
/// order are dropped.
pub fn adams<C: LambdaRing>(f: &Series<C>, m: u32) -> Series<C> {
    assert!(m >= 1);
    let k = f.order();
    let mut out = Series::zero(k);
    for (d, c) in f.coeffs().iter().enumerate() {
        let target = d.checked_mul(m as usize).unwrap();
        if target > k {
            break;
        }
        if !c.is_zero() {
            out.set_coeff(target, c.adams(m));
        }
    }
    out
}

/// Formal exponential `sum f^n / n!`; requires zero constant term.
pub fn formal_exp<C: QAlgebra>(f: &Series<C>) -> Result<Series<C>, Error> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let k = f.order();
    let mut acc = Series::one(k);
    let mut term = Series::one(k);
    let mut factorial = Rat::from_integer(1.into());
    for n in 1..=k {
        term = term.mul(f);
        factorial *= rat(n as i64);
        acc = acc.add(&term.scale_rat(&factorial.recip()));
    }
    Ok(acc)
}

/// Formal logarithm `-sum (1 - f)^n / n`; requires constant term 1.
pub fn formal_log<C: QAlgebra>(f: &Series<C>) -> Result<Series<C>, Error> {
    if !f.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let k = f.order();
    let one_minus = Series::one(k).sub(f);
    let mut acc = Series::zero(k);
    let mut term = Series::one(k);
    for n in 1..=k {
        term = term.mul(&one_minus);
        acc = acc.sub(&term.scale_rat(&rat(n as i64).recip()));
    }
    Ok(acc)
}

/// Plethystic exponential.
pub fn plethystic_exp<C: LambdaRing>(f: &Series<C>) -> Result<Series<C>, Error> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let k = f.order();
    let mut arg = Series::zero(k);
    for m in 1..=k.max(1) as u32 {
        let psi = adams(f, m);
        if psi.is_zero() {
            continue;
        }
        arg = arg.add(&psi.scale_rat(&rat(m as i64).recip()));
    }
    formal_exp(&arg)
}

/// Plethystic logarithm, the inverse of `plethystic_exp`.
pub fn plethystic_log<C: LambdaRing>(f: &Series<C>) -> Result<Series<C>, Error> {
    if !f.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let k = f.order();
    let lg = formal_log(f)?;
    let mut acc = Series::zero(k);
    for m in 1..=k.max(1) as u32 {
        let mu = moebius(m);
        if mu == 0 {
            continue;
        }
        let psi = adams(&lg, m);
        if psi.is_zero() {
            continue;
        }
        acc = acc.add(&psi.scale_rat(&(rat(mu) / rat(m as i64))));
    }
    Ok(acc)
}

/// The sequence `g_1..g_{m_max}` defined inductively by
/// `sum_{k | n} k g_k = psi_n(g)`.
pub fn gk_sequence<C: LambdaRing>(g: &C, m_max: u32) -> Vec<C> {
    let mut gs: Vec<C> = Vec::with_capacity(m_max as usize);
    for n in 1..=m_max {
        let mut rhs = g.adams(n);
        for k in 1..n {
            if n % k == 0 {
                rhs = rhs.sub(&gs[k as usize - 1].scale(&rat(k as i64)));
            }
        }
        gs.push(rhs.scale(&rat(n as i64).recip()));
    }
    gs
}

/// `Pow(f, g) = Exp(g Log(f))` for a ring-element exponent `g`.
pub fn plethystic_pow<C: LambdaRing>(f: &Series<C>, g: &C) -> Result<Series<C>, Error> {
    let lg = plethystic_log(f)?;
    plethystic_exp(&lg.scale_coeff(g))
}

/// The usual power map `f^g = exp(g log(f))`.
pub fn ring_power<C: QAlgebra>(f: &Series<C>, g: &C) -> Result<Series<C>, Error> {
    let lg = formal_log(f)?;
    formal_exp(&lg.scale_coeff(g))
}

/// `Pow` through the product expansion `prod_{k>=1} psi_k(f)^{g_k}` with
/// `g_k` from `gk_sequence`; agrees with the definition.
pub fn plethystic_pow_product<C: LambdaRing>(f: &Series<C>, g: &C) -> Result<Series<C>, Error> {
    if !f.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let k = f.order();
    let gs = gk_sequence(g, k.max(1) as u32);
    let mut acc = Series::one(k);
    // psi_k(f) = 1 + O(x^k), so factors with k > K contribute nothing.
    for (idx, gk) in gs.iter().enumerate() {
        if gk.is_zero() {
            continue;
        }
        let psi = adams(f, idx as u32 + 1);
        acc = acc.mul(&ring_power(&psi, gk)?);
    }
    Ok(acc)
}

/// The Heine series `sum_m x^m / prod_{i=1..m} (1 - v^i)` truncated at
/// order `k`; equals `Exp(x / (1 - v))`.
pub fn heine_series(k: usize) -> Series<RatFunc> {
    let mut coeffs = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let mut den = std::collections::BTreeMap::new();
        for i in 1..=m as u32 {
            den.insert(i, 1);
        }
        coeffs.push(RatFunc::normalize(
            1,
            0,
            crate::algebra::PolyQ::one(),
            den,
        ));
    }
    Series::from_coeffs(coeffs)
}
