//! Slope-twisted series and the extraction of stable invariants from
//! semistable ones.
//!
//! On a fixed slope every character is `k * gamma` for a primitive `gamma`,
//! and the two-variable twisted product restricts to the ray ring
//!
//! ```text
//! x^k o x^l = T^{(g-1) n_gamma^2 k l} x^{k+l}
//! ```
//!
//! with twist unit `T` (`v^2` for Poincare coefficients, `uv` for Hodge,
//! the Lefschetz sequence `(q^j)` for point counts); the antisymmetric part
//! of the Euler pairing vanishes on proportional characters, so the ring is
//! commutative. The defining relation
//!
//! ```text
//! r o Exp(A / (1 - T)) = 1
//! ```
//!
//! determines the stable series `A`, where the exponential side is the
//! per-(character, endomorphism-degree) product of Heine columns described
//! at [`recompose_from_stable`]; `stable_series` inverts it order by order.
//! The ring also carries dilation Adams operations (coefficient
//! substitution plus index dilation) with the plethystic exp/log pair they
//! induce; those maps are additive, Q-linear and satisfy
//! `psi_m psi_k = psi_{mk}`, but they are *not* multiplicative for the
//! twisted product, which is why the exponential side keeps its factored
//! form instead of collapsing to a single plethystic exponential.

use crate::algebra::poly::PolyQ;
use crate::algebra::rat::{rat, Rat};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::ratfunc2::RatFunc2;
use crate::algebra::ring::LambdaRing;
use crate::algebra::series::Series;
use crate::algebra::Poly2;
use crate::error::Error;
use crate::hnzagier::{hodge_r, poincare_r, CharPair};
use crate::lambda::{moebius, plethystic_exp};

/// A slope ray: a primitive character and the genus of the curve.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SlopeRay {
    gamma: CharPair,
    genus: u32,
}

impl SlopeRay {
    pub fn new(gamma: CharPair, genus: u32) -> Result<Self, Error> {
        if !gamma.is_primitive() {
            return Err(Error::NonPrimitiveRay {
                n: gamma.n,
                d: gamma.d,
            });
        }
        Ok(SlopeRay { gamma, genus })
    }

    /// The ray through `alpha = k * gamma`, together with `k`.
    pub fn through(alpha: CharPair, genus: u32) -> (Self, u32) {
        let (gamma, k) = alpha.primitive();
        (SlopeRay { gamma, genus }, k)
    }

    pub fn gamma(&self) -> CharPair {
        self.gamma
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// `(g - 1) n_gamma^2 = -<gamma, gamma>`; the twist exponent per
    /// degree product `k l`.
    pub fn twist_exponent(&self) -> i64 {
        (self.genus as i64 - 1) * (self.gamma.n as i64).pow(2)
    }
}

/// Truncated series on a slope ray with the twisted product.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistedSeries<C: LambdaRing> {
    ray: SlopeRay,
    /// `w = T^{(g-1) n^2}`; multiplying degrees `k` and `l` carries `w^{kl}`.
    twist: C,
    coeffs: Vec<C>,
}

impl<C: LambdaRing> TwistedSeries<C> {
    /// The zero series at truncation order `k` over the given twist unit
    /// `T`; fails if the required power of `T` is not invertible.
    pub fn zero(ray: SlopeRay, unit: &C, k: usize) -> Result<Self, Error> {
        let twist = unit
            .pow_i64(ray.twist_exponent())
            .ok_or(Error::NonRepresentableDivisor)?;
        Ok(TwistedSeries {
            ray,
            twist,
            coeffs: vec![C::zero(); k + 1],
        })
    }

    pub fn one(ray: SlopeRay, unit: &C, k: usize) -> Result<Self, Error> {
        let mut s = Self::zero(ray, unit, k)?;
        s.coeffs[0] = C::one();
        Ok(s)
    }

    pub fn from_coeffs(ray: SlopeRay, unit: &C, coeffs: Vec<C>) -> Result<Self, Error> {
        assert!(!coeffs.is_empty());
        let twist = unit
            .pow_i64(ray.twist_exponent())
            .ok_or(Error::NonRepresentableDivisor)?;
        Ok(TwistedSeries { ray, twist, coeffs })
    }

    pub fn ray(&self) -> SlopeRay {
        self.ray
    }

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

    fn compatible(&self, other: &Self) {
        assert_eq!(self.ray, other.ray, "twisted series on different rays");
        assert!(
            self.twist == other.twist,
            "twisted series with different twist units"
        );
    }

    /// Powers `w^0 .. w^max` of the twist base.
    fn twist_powers(&self, max: usize) -> Vec<C> {
        let mut pows = Vec::with_capacity(max + 1);
        pows.push(C::one());
        for _ in 0..max {
            pows.push(pows.last().unwrap().mul(&self.twist));
        }
        pows
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let k = self.order().min(other.order());
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].add(&other.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.compatible(other);
        let k = self.order().min(other.order());
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: (0..=k)
                .map(|i| self.coeffs[i].sub(&other.coeffs[i]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Twisted product: the `(k, l)` convolution term carries `w^{kl}`.
    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let k = self.order().min(other.order());
        let pows = self.twist_powers((k / 2) * (k - k / 2));
        let mut coeffs = vec![C::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(k + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let mut term = a.mul(b);
                if i * j > 0 {
                    term = term.mul(&pows[i * j]);
                }
                coeffs[i + j] = coeffs[i + j].add(&term);
            }
        }
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs,
        }
    }

    /// Coefficientwise multiplication by a ring element (degree-0 scalar,
    /// no twist involved).
    pub fn scale_coeff(&self, c: &C) -> Self {
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Twisted multiplicative inverse; requires constant term 1.
    pub fn inv(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let k = self.order();
        let pows = self.twist_powers((k / 2) * (k - k / 2));
        let mut out = vec![C::zero(); k + 1];
        out[0] = C::one();
        for n in 1..=k {
            let mut acc = C::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() || out[n - i].is_zero() {
                    continue;
                }
                let mut term = self.coeffs[i].mul(&out[n - i]);
                if i * (n - i) > 0 {
                    term = term.mul(&pows[i * (n - i)]);
                }
                acc = acc.add(&term);
            }
            out[n] = acc.neg();
        }
        Ok(TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: out,
        })
    }

    /// Adams operation: coefficient Adams plus index dilation.
    pub fn adams(&self, m: u32) -> Self {
        assert!(m >= 1);
        let k = self.order();
        let mut out = vec![C::zero(); k + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            let target = d * m as usize;
            if target > k {
                break;
            }
            if !c.is_zero() {
                out[target] = c.adams(m);
            }
        }
        TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: out,
        }
    }

    /// Formal exponential with twisted powers; requires zero constant term.
    pub fn formal_exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k = self.order();
        let mut acc = TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: vec![C::zero(); k + 1],
        };
        acc.coeffs[0] = C::one();
        let mut term = acc.clone();
        let mut factorial = Rat::from_integer(1.into());
        for n in 1..=k {
            term = term.mul(self);
            factorial *= rat(n as i64);
            acc = acc.add(&term.scale_rat(&factorial.recip()));
        }
        Ok(acc)
    }

    /// Formal logarithm with twisted powers; requires constant term 1.
    pub fn formal_log(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let k = self.order();
        let mut one = TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: vec![C::zero(); k + 1],
        };
        one.coeffs[0] = C::one();
        let one_minus = one.sub(self);
        let mut acc = TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: vec![C::zero(); k + 1],
        };
        let mut term = one;
        for n in 1..=k {
            term = term.mul(&one_minus);
            acc = acc.sub(&term.scale_rat(&rat(n as i64).recip()));
        }
        Ok(acc)
    }

    /// Twisted plethystic exponential `exp(sum psi_m(f)/m)`.
    pub fn plethystic_exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k = self.order();
        let mut arg = TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: vec![C::zero(); k + 1],
        };
        for m in 1..=k.max(1) as u32 {
            let psi = self.adams(m);
            arg = arg.add(&psi.scale_rat(&rat(m as i64).recip()));
        }
        arg.formal_exp()
    }

    /// Twisted plethystic logarithm `sum mu(m)/m psi_m(log f)`; inverse of
    /// `plethystic_exp`.
    pub fn plethystic_log(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let k = self.order();
        let lg = self.formal_log()?;
        let mut acc = TwistedSeries {
            ray: self.ray,
            twist: self.twist.clone(),
            coeffs: vec![C::zero(); k + 1],
        };
        for m in 1..=k.max(1) as u32 {
            let mu = moebius(m);
            if mu == 0 {
                continue;
            }
            let psi = lg.adams(m);
            acc = acc.add(&psi.scale_rat(&(rat(mu) / rat(m as i64))));
        }
        Ok(acc)
    }
}

/// The semistable generating series on a ray with Poincare-function
/// coefficients: constant term 1 and `x^k` coefficient `P(r_{k gamma}, v)`.
pub fn r_series_poincare(ray: SlopeRay, k_max: usize) -> TwistedSeries<RatFunc> {
    let unit = RatFunc::monomial(2); // v^2
    let mut s = TwistedSeries::one(ray, &unit, k_max).expect("v^2 is invertible");
    for k in 1..=k_max {
        s.set_coeff(k, poincare_r(&ray.gamma().scaled(k as u32), ray.genus()));
    }
    s
}

/// Hodge analogue with `T = uv` and coefficients `R_{k gamma}(u, v)`.
pub fn r_series_hodge(ray: SlopeRay, k_max: usize) -> TwistedSeries<RatFunc2> {
    let unit = RatFunc2::monomial(1, 1); // uv
    let mut s = TwistedSeries::one(ray, &unit, k_max).expect("uv is invertible");
    for k in 1..=k_max {
        s.set_coeff(k, hodge_r(&ray.gamma().scaled(k as u32), ray.genus()));
    }
    s
}

/// `f^s = exp(s log f)` in the twisted ring, for a degree-0 ring exponent.
pub fn ring_power<C: LambdaRing>(
    f: &TwistedSeries<C>,
    s: &C,
) -> Result<TwistedSeries<C>, Error> {
    Ok(f.formal_log()?.scale_coeff(s).formal_exp()?)
}

/// `[inf, m]_T = prod_{i=1..m} (1 - T^i)^{-1}` for `m = 0..=k`.
fn heine_column<C: LambdaRing>(unit: &C, k: usize) -> Result<Vec<C>, Error> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(C::one());
    for i in 1..=k as i64 {
        let factor = C::one()
            .sub(&unit.pow_i64(i).ok_or(Error::NonRepresentableDivisor)?)
            .try_inv()
            .ok_or(Error::NonRepresentableDivisor)?;
        out.push(out.last().unwrap().mul(&factor));
    }
    Ok(out)
}

/// The twisted-exponential side of the defining relation, built from stable
/// coefficients `a_1..a_K` (`a[0]` ignored): the twisted product
///
/// ```text
/// prod_{k <= K} prod_{r | k} F_{k,r}^{s_{k gamma, r}},
/// F_{k,r} = sum_m psi_r([inf, m]_T) y^{m k},
/// r * s_{k gamma, r} = sum_{e | r} mu(r/e) psi_e(a_{k/r}),
/// ```
///
/// the factorization per (character, endomorphism degree) coming from the
/// stable-bundle decomposition of the semistable category. Multiplying the
/// semistable series by this product gives 1. Each factor is a
/// plethystic-exponential column `Exp(x^beta/(1-T))` with Adams-substituted
/// coefficients, but the factors combine through the twisted product: the
/// identity `Exp(f+g) = Exp(f) Exp(g)` fails in the twisted ring (its
/// dilation Adams maps are not multiplicative), so the product form is the
/// one that holds.
pub fn recompose_from_stable<C: LambdaRing>(
    ray: SlopeRay,
    unit: &C,
    stable: &[C],
) -> Result<TwistedSeries<C>, Error> {
    let k_max = stable.len() - 1;
    let heine = heine_column(unit, k_max)?;
    let mut acc = TwistedSeries::one(ray, unit, k_max)?;
    for k in 1..=k_max {
        for r in 1..=k as u32 {
            if k as u32 % r != 0 {
                continue;
            }
            // s_{k gamma, r} via Moebius inversion of the a/s relation
            let base = &stable[k / r as usize];
            let mut s = C::zero();
            for e in 1..=r {
                if r % e != 0 {
                    continue;
                }
                let mu = moebius(r / e);
                if mu == 0 {
                    continue;
                }
                s = s.add(&base.adams(e).scale(&rat(mu)));
            }
            s = s.scale(&rat(r as i64).recip());
            if s.is_zero() {
                continue;
            }
            let mut factor = TwistedSeries::one(ray, unit, k_max)?;
            for m in 1..=k_max / k {
                factor.set_coeff(m * k, heine[m].adams(r));
            }
            acc = acc.mul(&ring_power(&factor, &s)?);
        }
    }
    Ok(acc)
}

/// Extract the stable series `A` from the semistable series `r`: solve
///
/// ```text
/// r o (recomposition of A) = 1
/// ```
///
/// order by order. At order `n` the only new unknown is `a_n`; it enters
/// the relation linearly with coefficient `1/(1 - T)`, so
/// `a_n = (1 - T) ([r^{o-1}]_n - [prediction with a_n = 0]_n)`.
pub fn stable_series<C: LambdaRing>(
    r: &TwistedSeries<C>,
    unit: &C,
) -> Result<TwistedSeries<C>, Error> {
    let k_max = r.order();
    let e = r.inv()?;
    let one_minus_t = C::one().sub(unit);
    let mut a: Vec<C> = vec![C::zero(); k_max + 1];
    for n in 1..=k_max {
        let predicted = recompose_from_stable(r.ray(), unit, &a[..=n])?;
        let defect = e.coeff(n).sub(predicted.coeff(n));
        a[n] = defect.mul(&one_minus_t);
    }
    TwistedSeries::from_coeffs(r.ray(), unit, a)
}

/// Virtual Poincare polynomial of the moduli space of stable bundles with
/// character `k * gamma`.
///
/// A non-polynomial coefficient is a hard error: polynomiality is
/// theorem-backed for Poincare functions, so failing the certificate means
/// an implementation bug or a convention breach upstream.
pub fn stable_poincare(ray: SlopeRay, k: usize) -> Result<PolyQ, Error> {
    assert!(k >= 1);
    let r = r_series_poincare(ray, k);
    let a = stable_series(&r, &RatFunc::monomial(2))?;
    let coeff = a.coeff(k);
    coeff.to_polynomial().ok_or_else(|| Error::NonPolynomial {
        order: k,
        value: coeff.to_string(),
    })
}

/// Result of the conjectural Hodge extraction: the rational-function value
/// and, when the conjecture holds for the instance, its polynomial form.
#[derive(Clone, Debug)]
pub struct HodgeStable {
    pub value: RatFunc2,
    /// `None` when the extracted coefficient is not polynomial; callers
    /// should surface this as a warning, not an error.
    pub polynomial: Option<Poly2>,
}

/// Conjectural virtual Hodge polynomial of the stable moduli space with
/// character `k * gamma`; specializes to `stable_poincare` at `u = v`.
pub fn stable_hodge(ray: SlopeRay, k: usize) -> Result<HodgeStable, Error> {
    assert!(k >= 1);
    let r = r_series_hodge(ray, k);
    let a = stable_series(&r, &RatFunc2::monomial(1, 1))?;
    let value = a.coeff(k).clone();
    let polynomial = value.to_polynomial();
    Ok(HodgeStable { value, polynomial })
}

/// Poincare function of the semistable moduli space at `k * gamma`: the
/// `x^k` coefficient of the plain (untwisted) plethystic exponential of the
/// stable generating series.
pub fn semistable_poincare(ray: SlopeRay, k: usize) -> Result<RatFunc, Error> {
    assert!(k >= 1);
    let r = r_series_poincare(ray, k);
    let a = stable_series(&r, &RatFunc::monomial(2))?;
    let mut plain = Series::zero(k);
    for j in 1..=k {
        plain.set_coeff(j, a.coeff(j).clone());
    }
    let e = plethystic_exp(&plain)?;
    Ok(e.coeff(k).clone())
}
