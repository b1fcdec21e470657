//! Certified rational enclosures of `zeta(2)`, `zeta(4)` and constants
//! derived from them, plus exact checkers for the two inequalities that
//! drive the `k >= 2` argument.
//!
//! Base enclosures are `S_N + tail` where `S_N` is the exact partial sum and
//! the tails come from the integral test:
//!
//! * `s = 2`: `1/(N+1) < zeta(2) - S_N < 1/N`
//! * `s = 4`: `1/(3(N+1)^3) < zeta(4) - S_N < 1/(3N^3)`

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;
use crate::rational::{int, ratio, serde_fraction, Rational};
use crate::symfunc::{sigma_column, SigmaError};

/// Default starting point for adaptive refinement.
pub const DEFAULT_START_TERMS: u64 = 100;
/// Default ceiling on terms actually summed.
pub const DEFAULT_TERMS_CAP: u64 = 1_000_000;
/// Environment variable overriding [`DEFAULT_TERMS_CAP`].
pub const TERMS_CAP_ENV: &str = "RECIPSYM_TERMS_CAP";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("zeta({0}) is not supported; only s = 2 and s = 4")]
    UnsupportedOrder(u32),
    #[error("{0} is not a derived constant")]
    NotDerived(ConstantId),
    #[error("terms must be at least 1")]
    ZeroTerms,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstantId {
    #[serde(rename = "ZETA2")]
    Zeta2,
    #[serde(rename = "ZETA4")]
    Zeta4,
    #[serde(rename = "PI2_OVER_6")]
    Pi2Over6,
    #[serde(rename = "PI2_OVER_12")]
    Pi2Over12,
    #[serde(rename = "PI4_OVER_90")]
    Pi4Over90,
    #[serde(rename = "PI4_OVER_120")]
    Pi4Over120,
    #[serde(rename = "ZETA2_MINUS_1")]
    Zeta2Minus1,
}

impl ConstantId {
    pub const ALL: [ConstantId; 7] = [
        ConstantId::Zeta2,
        ConstantId::Zeta4,
        ConstantId::Pi2Over6,
        ConstantId::Pi2Over12,
        ConstantId::Pi4Over90,
        ConstantId::Pi4Over120,
        ConstantId::Zeta2Minus1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ConstantId::Zeta2 => "ZETA2",
            ConstantId::Zeta4 => "ZETA4",
            ConstantId::Pi2Over6 => "PI2_OVER_6",
            ConstantId::Pi2Over12 => "PI2_OVER_12",
            ConstantId::Pi4Over90 => "PI4_OVER_90",
            ConstantId::Pi4Over120 => "PI4_OVER_120",
            ConstantId::Zeta2Minus1 => "ZETA2_MINUS_1",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ConstantId::Zeta2 => "ζ(2)",
            ConstantId::Zeta4 => "ζ(4)",
            ConstantId::Pi2Over6 => "π²/6",
            ConstantId::Pi2Over12 => "π²/12",
            ConstantId::Pi4Over90 => "π⁴/90",
            ConstantId::Pi4Over120 => "π⁴/120",
            ConstantId::Zeta2Minus1 => "ζ(2)−1",
        }
    }

    pub fn from_id(text: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(text))
    }

    /// Constants obtained by interval arithmetic rather than a direct sum.
    pub fn is_derived(self) -> bool {
        matches!(
            self,
            ConstantId::Pi2Over12 | ConstantId::Pi4Over120 | ConstantId::Zeta2Minus1
        )
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `lo <= constant <= hi`, with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    pub constant: ConstantId,
    #[serde(with = "serde_fraction")]
    pub lo: Rational,
    #[serde(with = "serde_fraction")]
    pub hi: Rational,
    pub terms: u64,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

// Exact partial sums, memoized. Readers share the lock.
type SumCache = RwLock<HashMap<(u32, u64), Arc<Rational>>>;
type EnclosureCache = RwLock<HashMap<(ConstantId, u64), Arc<Enclosure>>>;

fn sum_cache() -> &'static SumCache {
    static CACHE: OnceLock<SumCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn enclosure_cache() -> &'static EnclosureCache {
    static CACHE: OnceLock<EnclosureCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn primes_upto(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn product_tree(mut xs: Vec<BigUint>) -> BigUint {
    if xs.is_empty() {
        return BigUint::one();
    }
    while xs.len() > 1 {
        xs = xs
            .chunks(2)
            .map(|pair| pair.iter().product::<BigUint>())
            .collect();
    }
    xs.pop().unwrap()
}

/// Divides out of `num` and `den` every power of the listed primes they share.
fn strip_common(num: &mut BigUint, den: &mut BigUint, primes: &[u64]) {
    for &p in primes {
        let p = BigUint::from(p);
        loop {
            let (qn, rn) = num.div_rem(&p);
            if !rn.is_zero() {
                break;
            }
            let (qd, rd) = den.div_rem(&p);
            if !rd.is_zero() {
                break;
            }
            *num = qn;
            *den = qd;
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `sum_{j=1}^{n} 1/j^s` in lowest terms.
///
/// Summed over `lcm(1..n)^s`; the final reduction divides by primes up to
/// `n` instead of taking a gcd of two very large integers.
pub fn zeta_partial_sum(s: u32, n: u64) -> Result<Arc<Rational>, BoundsError> {
    if s != 2 && s != 4 {
        return Err(BoundsError::UnsupportedOrder(s));
    }
    if n == 0 {
        return Err(BoundsError::ZeroTerms);
    }
    if let Some(hit) = sum_cache().read().unwrap().get(&(s, n)) {
        return Ok(hit.clone());
    }
    let primes = primes_upto(n);
    let lcm = product_tree(
        primes
            .iter()
            .map(|&p| {
                let mut q = p;
                while q <= n / p {
                    q *= p;
                }
                BigUint::from(q)
            })
            .collect(),
    );
    let mut den = lcm.pow(s);
    let mut num = BigUint::zero();
    for j in 1..=n {
        let sq = j * j;
        let term = if s == 2 { &den / sq } else { &den / sq / sq };
        num += term;
    }
    strip_common(&mut num, &mut den, &primes);
    let value = Arc::new(Rational::new_raw(num.into(), den.into()));
    sum_cache()
        .write()
        .unwrap()
        .insert((s, n), value.clone());
    Ok(value)
}

/// `r + 1/c` in lowest terms. Any prime shared by the raw numerator and
/// denominator must divide `c`, so only those primes are tried.
fn add_unit_fraction(r: &Rational, c: &BigUint, c_primes: &[u64]) -> Rational {
    let (a, b) = (r.numer(), r.denom());
    let c_int = BigInt::from(c.clone());
    let num = a * &c_int + b;
    let den = b * &c_int;
    let (mut num_u, mut den_u) = (
        num.to_biguint().expect("positive partial sums"),
        den.to_biguint().expect("positive denominator"),
    );
    strip_common(&mut num_u, &mut den_u, c_primes);
    Rational::new_raw(num_u.into(), den_u.into())
}

/// Enclosure of `zeta(s)` for `s` in `{2, 4}` from `terms` exact terms.
pub fn zeta_enclosure(s: u32, terms: u64) -> Result<Enclosure, BoundsError> {
    let id = match s {
        2 => ConstantId::Zeta2,
        4 => ConstantId::Zeta4,
        _ => return Err(BoundsError::UnsupportedOrder(s)),
    };
    enclosure(id, terms)
}

/// Enclosure for any supported constant; base ones come from the partial
/// sum, derived ones from interval arithmetic on the base enclosures.
pub fn enclosure(id: ConstantId, terms: u64) -> Result<Enclosure, BoundsError> {
    if terms == 0 {
        return Err(BoundsError::ZeroTerms);
    }
    if let Some(hit) = enclosure_cache().read().unwrap().get(&(id, terms)) {
        return Ok((**hit).clone());
    }
    let enc = match id {
        ConstantId::Zeta2 | ConstantId::Pi2Over6 => base_enclosure(2, terms, id)?,
        ConstantId::Zeta4 | ConstantId::Pi4Over90 => base_enclosure(4, terms, id)?,
        _ => derived_enclosure(id, terms)?,
    };
    enclosure_cache()
        .write()
        .unwrap()
        .insert((id, terms), Arc::new(enc.clone()));
    Ok(enc)
}

fn base_enclosure(s: u32, n: u64, id: ConstantId) -> Result<Enclosure, BoundsError> {
    let partial = zeta_partial_sum(s, n)?;
    let (lo_den, hi_den, primes_lo, primes_hi) = if s == 2 {
        (
            BigUint::from(n + 1),
            BigUint::from(n),
            prime_factors(n + 1),
            prime_factors(n),
        )
    } else {
        let mut pl = prime_factors(n + 1);
        pl.push(3);
        let mut ph = prime_factors(n);
        ph.push(3);
        (
            BigUint::from(3u32) * BigUint::from(n + 1).pow(3),
            BigUint::from(3u32) * BigUint::from(n).pow(3),
            pl,
            ph,
        )
    };
    Ok(Enclosure {
        constant: id,
        lo: add_unit_fraction(&partial, &lo_den, &primes_lo),
        hi: add_unit_fraction(&partial, &hi_den, &primes_hi),
        terms: n,
    })
}

/// `PI2_OVER_12 = zeta(2)/2`, `PI4_OVER_120 = (zeta(2)^2 - zeta(4))/2`,
/// `ZETA2_MINUS_1 = zeta(2) - 1`.
pub fn derived_enclosure(id: ConstantId, terms: u64) -> Result<Enclosure, BoundsError> {
    if !id.is_derived() {
        return Err(BoundsError::NotDerived(id));
    }
    let z2 = enclosure(ConstantId::Zeta2, terms)?;
    let (lo, hi) = match id {
        ConstantId::Pi2Over12 => (&z2.lo / int(2), &z2.hi / int(2)),
        ConstantId::Zeta2Minus1 => (&z2.lo - int(1), &z2.hi - int(1)),
        ConstantId::Pi4Over120 => {
            let z4 = enclosure(ConstantId::Zeta4, terms)?;
            let (sq_lo, sq_hi) = interval_mul((&z2.lo, &z2.hi), (&z2.lo, &z2.hi));
            ((sq_lo - &z4.hi) / int(2), (sq_hi - &z4.lo) / int(2))
        }
        _ => unreachable!("checked by is_derived"),
    };
    Ok(Enclosure {
        constant: id,
        lo,
        hi,
        terms,
    })
}

fn interval_mul(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> (Rational, Rational) {
    let products = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    (lo, hi)
}

/// Adaptive refinement schedule: start, then square (at least `10`), capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refinement {
    pub start: u64,
    pub cap: u64,
}

impl Refinement {
    pub fn new(start: u64, cap: u64) -> Self {
        Self {
            start: start.max(1),
            cap: cap.max(1),
        }
    }

    /// Starts at `start` with the cap from [`TERMS_CAP_ENV`] or the default.
    pub fn starting_at(start: u64) -> Self {
        Self::new(start, terms_cap())
    }

    pub fn schedule(&self) -> impl Iterator<Item = u64> {
        let cap = self.cap;
        let first = self.start.min(cap);
        std::iter::successors(Some(first), move |&n| {
            (n < cap).then(|| n.saturating_mul(n).max(10).min(cap))
        })
    }

    /// First enclosure on the schedule satisfying `accept`, or the last one
    /// tried with `false`.
    pub fn refine(
        &self,
        id: ConstantId,
        mut accept: impl FnMut(&Enclosure) -> bool,
    ) -> Result<(Enclosure, bool), BoundsError> {
        let mut last = None;
        for n in self.schedule() {
            let enc = enclosure(id, n)?;
            if accept(&enc) {
                return Ok((enc, true));
            }
            last = Some(enc);
        }
        Ok((last.expect("schedule is never empty"), false))
    }
}

impl Default for Refinement {
    fn default() -> Self {
        Self::starting_at(DEFAULT_START_TERMS)
    }
}

pub fn terms_cap() -> u64 {
    std::env::var(TERMS_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(DEFAULT_TERMS_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimId {
    /// `sigma_{k+1}(n) <= (zeta(2) - 1) sigma_k(n-1)`
    #[serde(rename = "EQ1_DESCENT")]
    Eq1Descent,
    /// `sigma_2(n) < pi^4/120`
    #[serde(rename = "EQ2_SIGMA2")]
    Eq2Sigma2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub poly: Polynomial,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub n: u64,
}

/// Outcome of one inequality check. The right-hand side is
/// `rhs_factor * rhs_enclosure` (factor 1 when absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub claim: ClaimId,
    pub instance: Instance,
    #[serde(with = "serde_fraction")]
    pub lhs: Rational,
    #[serde(
        with = "opt_fraction",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub rhs_factor: Option<Rational>,
    pub rhs_enclosure: Enclosure,
    pub verdict: Verdict,
    pub terms_used: u64,
}

mod opt_fraction {
    use super::Rational;
    use crate::rational::{parse_fraction, to_fraction_string};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&to_fraction_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_fraction(&t).map_err(de::Error::custom))
            .transpose()
    }
}

fn require_theorem_poly(f: &Polynomial) -> Result<(), BoundsError> {
    if f.has_negative_coeff() || f.degree() < 2 {
        return Err(BoundsError::Precondition(format!(
            "f = {f} must have nonnegative coefficients and degree at least 2"
        )));
    }
    Ok(())
}

fn judge(lhs: &Rational, lo: &Rational, hi: &Rational, strict: bool) -> Verdict {
    let holds = if strict { lhs < lo } else { lhs <= lo };
    if holds {
        Verdict::Holds
    } else if lhs > hi {
        Verdict::Fails
    } else {
        Verdict::Indeterminate
    }
}

/// Checks `sigma_{k+1}(n) <= (zeta(2) - 1) sigma_k(n-1)` using the lower end
/// of the enclosure, refining from `terms`.
pub fn check_eq1(f: &Polynomial, k: usize, n: u64, terms: u64) -> Result<InequalityReport, BoundsError> {
    check_eq1_with(f, k, n, Refinement::starting_at(terms))
}

pub fn check_eq1_with(
    f: &Polynomial,
    k: usize,
    n: u64,
    refinement: Refinement,
) -> Result<InequalityReport, BoundsError> {
    require_theorem_poly(f)?;
    if k < 1 || (k as u64) + 1 > n {
        return Err(BoundsError::Precondition(format!(
            "need 1 <= k and k + 1 <= n, got k = {k}, n = {n}"
        )));
    }
    let prev = sigma_column(f, n - 1)?;
    let factor = prev.sigma(k);
    let mut col = prev;
    col.push(&f.eval_at(n))?;
    let lhs = col.sigma(k + 1);
    let mut verdict = Verdict::Indeterminate;
    let (enc, _) = refinement.refine(ConstantId::Zeta2Minus1, |e| {
        verdict = judge(&lhs, &(&e.lo * &factor), &(&e.hi * &factor), false);
        verdict != Verdict::Indeterminate
    })?;
    Ok(InequalityReport {
        claim: ClaimId::Eq1Descent,
        instance: Instance {
            poly: f.clone(),
            k: Some(k),
            n,
        },
        lhs,
        rhs_factor: Some(factor),
        terms_used: enc.terms,
        rhs_enclosure: enc,
        verdict,
    })
}

/// Checks `sigma_2(n) < pi^4/120`, certified against the lower end of the
/// enclosure.
pub fn check_eq2(f: &Polynomial, n: u64, terms: u64) -> Result<InequalityReport, BoundsError> {
    check_eq2_with(f, n, Refinement::starting_at(terms))
}

pub fn check_eq2_with(
    f: &Polynomial,
    n: u64,
    refinement: Refinement,
) -> Result<InequalityReport, BoundsError> {
    require_theorem_poly(f)?;
    if n < 2 {
        return Err(BoundsError::Precondition(format!("need n >= 2, got n = {n}")));
    }
    let lhs = sigma_column(f, n)?.sigma(2);
    let mut verdict = Verdict::Indeterminate;
    let (enc, _) = refinement.refine(ConstantId::Pi4Over120, |e| {
        verdict = judge(&lhs, &e.lo, &e.hi, true);
        verdict != Verdict::Indeterminate
    })?;
    Ok(InequalityReport {
        claim: ClaimId::Eq2Sigma2,
        instance: Instance {
            poly: f.clone(),
            k: None,
            n,
        },
        lhs,
        rhs_factor: None,
        terms_used: enc.terms,
        rhs_enclosure: enc,
        verdict,
    })
}

/// Running sums for `n = 1, 2, ...`: `sum_{j<=n} 1/(j^2 + j)` when `shift`
/// is 0, `sum_{j<=n} 1/(j^2 + shift)` otherwise.
#[derive(Debug, Clone)]
pub struct TelescopingSums {
    shift: u64,
    n: u64,
    sum: Rational,
}

impl TelescopingSums {
    pub fn new(shift: u64) -> Self {
        Self {
            shift,
            n: 0,
            sum: Rational::zero(),
        }
    }
}

impl Iterator for TelescopingSums {
    type Item = (u64, Rational);

    fn next(&mut self) -> Option<Self::Item> {
        self.n += 1;
        let j = BigInt::from(self.n);
        let lower = if self.shift == 0 { j.clone() } else { BigInt::from(self.shift) };
        self.sum += Rational::new(BigInt::one(), &j * &j + lower);
        Some((self.n, self.sum.clone()))
    }
}

/// Closed form (`shift = 0`, i.e. `1/(j^2+j)`) or upper bound (`shift = 2`)
/// that each telescoping sum is checked against.
pub fn telescoping_reference(n: u64, shift: u64) -> Rational {
    match shift {
        0 => int(1) - ratio(1, n as i64 + 1),
        // 1/3 + 1/6 + sum_{j=3}^{n} 1/((j-1)j)
        _ => int(1) - ratio(1, n as i64),
    }
}

/// `shift = 0`: returns `sum_{j<=n} 1/(j^2+j)` after checking it equals
/// `1 - 1/(n+1)`. `shift = 2`: returns `sum_{j<=n} 1/(j^2+2)` after checking
/// it is below `1/3 + 1/6 + 1/2 - 1/n`.
pub fn telescoping_bound(n: u64, shift: u64) -> Result<Rational, BoundsError> {
    match shift {
        0 if n >= 1 => {}
        2 if n >= 3 => {}
        0 | 2 => {
            return Err(BoundsError::Precondition(format!(
                "n = {n} is too small for shift {shift}"
            )))
        }
        _ => {
            return Err(BoundsError::Precondition(format!(
                "shift must be 0 or 2, got {shift}"
            )))
        }
    }
    let sum = TelescopingSums::new(shift).nth(n as usize - 1).unwrap().1;
    check_telescoping(n, shift, &sum)?;
    Ok(sum)
}

pub fn check_telescoping(n: u64, shift: u64, sum: &Rational) -> Result<(), BoundsError> {
    let reference = telescoping_reference(n, shift);
    let ok = if shift == 0 {
        *sum == reference
    } else {
        *sum < reference
    };
    if ok {
        Ok(())
    } else {
        Err(BoundsError::IdentityFailed(format!(
            "shift {shift}, n = {n}: sum {sum} vs {reference}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::parse_fraction;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    fn naive_partial(s: u32, n: u64) -> Rational {
        (1..=n as i64).map(|j| ratio(1, j.pow(s))).sum()
    }

    #[test]
    fn partial_sums_match_naive_summation() {
        for s in [2, 4] {
            for n in [1, 2, 3, 7, 12, 30, 64] {
                assert_eq!(*zeta_partial_sum(s, n).unwrap(), naive_partial(s, n), "s={s} n={n}");
            }
        }
    }

    #[test]
    fn single_term_enclosures() {
        let e = zeta_enclosure(2, 1).unwrap();
        assert_eq!((e.lo, e.hi), (ratio(3, 2), int(2)));
        let e = zeta_enclosure(4, 1).unwrap();
        assert_eq!((e.lo, e.hi), (ratio(25, 24), ratio(4, 3)));
        let e = derived_enclosure(ConstantId::Pi2Over12, 1).unwrap();
        assert_eq!((e.lo, e.hi), (ratio(3, 4), int(1)));
        let e = derived_enclosure(ConstantId::Pi4Over120, 1).unwrap();
        assert_eq!((e.lo, e.hi), (ratio(11, 24), ratio(71, 48)));
    }

    #[test]
    fn endpoints_are_reduced() {
        for n in [5, 99, 100, 360] {
            for s in [2, 4] {
                let e = zeta_enclosure(s, n).unwrap();
                for r in [&e.lo, &e.hi] {
                    let reduced = Rational::new(r.numer().clone(), r.denom().clone());
                    assert_eq!(r.numer(), reduced.numer());
                    assert_eq!(r.denom(), reduced.denom());
                }
            }
        }
    }

    #[test]
    fn width_law_for_zeta2() {
        for n in [1u64, 2, 10, 100, 1000] {
            let e = zeta_enclosure(2, n).unwrap();
            assert_eq!(e.width(), Rational::new(1.into(), BigInt::from(n * (n + 1))));
        }
    }

    #[test]
    fn thousand_terms_contain_reference() {
        let pi2_6 = parse_fraction("1644934066848226436472/1000000000000000000000").unwrap();
        let e = zeta_enclosure(2, 1000).unwrap();
        assert!(e.contains(&pi2_6));
        assert!(e.width() < ratio(1, 1_000_000));
        let e = derived_enclosure(ConstantId::Pi4Over120, 1000).unwrap();
        assert!(e.hi < int(1));
        let e = derived_enclosure(ConstantId::Zeta2Minus1, 1000).unwrap();
        assert!(e.hi < int(1));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(zeta_enclosure(3, 10), Err(BoundsError::UnsupportedOrder(3)));
        assert_eq!(zeta_enclosure(2, 0), Err(BoundsError::ZeroTerms));
        assert_eq!(
            derived_enclosure(ConstantId::Zeta4, 10),
            Err(BoundsError::NotDerived(ConstantId::Zeta4))
        );
        assert!(check_eq2(&p("x^2-1"), 5, 100).is_err());
        assert!(check_eq2(&p("x^2"), 1, 100).is_err());
        assert!(check_eq1(&p("x+1"), 1, 3, 100).is_err());
        assert!(check_eq1(&p("x^2"), 3, 3, 100).is_err());
        assert!(telescoping_bound(2, 2).is_err());
        assert!(telescoping_bound(5, 1).is_err());
    }

    #[test]
    fn eq1_examples() {
        let r = check_eq1(&p("x^2"), 1, 3, 100).unwrap();
        assert_eq!(r.lhs, ratio(7, 18));
        assert_eq!(r.rhs_factor, Some(ratio(5, 4)));
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.terms_used, 100);

        let r = check_eq1(&p("x^2+1"), 1, 2, 100).unwrap();
        assert_eq!(r.lhs, ratio(1, 10));
        assert_eq!(r.rhs_factor, Some(ratio(1, 2)));
        assert_eq!(r.verdict, Verdict::Holds);

        let r = check_eq1(&p("x^2"), 1, 2, 100).unwrap();
        assert_eq!(r.lhs, ratio(1, 4));
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn eq2_examples() {
        let r = check_eq2(&p("x^2"), 100, 1000).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.lhs < ratio(8117, 10000));
        let r = check_eq2(&p("x^2+1"), 2, 3).unwrap();
        assert_eq!(r.lhs, ratio(1, 10));
        assert_eq!(r.verdict, Verdict::Holds);
        let r = check_eq2(&p("x^3"), 50, 100).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn refinement_schedule() {
        let steps: Vec<u64> = Refinement::new(100, 1_000_000).schedule().collect();
        assert_eq!(steps, [100, 10_000, 1_000_000]);
        let steps: Vec<u64> = Refinement::new(1, 500).schedule().collect();
        assert_eq!(steps, [1, 10, 100, 500]);
        let steps: Vec<u64> = Refinement::new(800, 500).schedule().collect();
        assert_eq!(steps, [500]);
    }

    #[test]
    fn refinement_reports_indeterminate_at_cap() {
        // sigma_2(n) for large n approaches pi^4/120 closely enough that
        // N = 10 cannot decide it.
        let r = check_eq2_with(&p("x^2"), 300, Refinement::new(10, 10)).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
        assert_eq!(r.terms_used, 10);
    }

    #[test]
    fn telescoping_examples() {
        assert_eq!(telescoping_bound(3, 0).unwrap(), ratio(3, 4));
        assert_eq!(telescoping_bound(1, 0).unwrap(), ratio(1, 2));
        assert_eq!(telescoping_bound(3, 2).unwrap(), ratio(13, 22));
        assert!(ratio(13, 22) < ratio(1, 3) + ratio(1, 6) + ratio(1, 2) - ratio(1, 3));
    }

    #[test]
    fn enclosure_serializes() {
        let e = zeta_enclosure(2, 1).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"constant":"ZETA2","lo":"3/2","hi":"2","terms":1}"#);
        let back: Enclosure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
