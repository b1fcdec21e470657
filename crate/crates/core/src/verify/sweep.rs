//! Exhaustive integrality sweeps over finite polynomial families.
//!
//! Each polynomial is one unit of work: its columns are streamed in `n` and
//! every tracked `sigma_k(n)` is tested for integrality. Results are merged
//! by sorting on the canonical rendering, so the report does not depend on
//! the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;
use crate::rational::{serde_fraction, Rational};
use crate::symfunc::ColumnStream;

use super::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub poly: Polynomial,
    pub k: usize,
    pub n: u64,
    #[serde(with = "serde_fraction")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: String,
    pub ranges: BTreeMap<String, u64>,
    pub instances_checked: u64,
    pub hits: Vec<Hit>,
    /// Hits outside the family's expected set.
    pub unexpected: Vec<Hit>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepReport {
    pub fn is_expected_pattern(&self) -> bool {
        self.unexpected.is_empty()
    }
}

/// A finite family of polynomials plus the integer hits it is expected to
/// produce.
pub trait SweepFamily: Send + Sync {
    fn description(&self) -> String;

    fn ranges(&self) -> BTreeMap<String, u64>;

    fn polynomials(&self) -> Vec<Polynomial>;

    fn n_range(&self) -> RangeInclusive<u64>;

    /// Largest `k` inspected; `None` means every `k <= n`.
    fn max_k(&self) -> Option<usize> {
        None
    }

    fn is_expected(&self, f: &Polynomial, k: usize, n: u64) -> bool;
}

fn scan_one(
    family: &dyn SweepFamily,
    f: &Polynomial,
) -> Result<(Vec<Hit>, u64), VerifyError> {
    let range = family.n_range();
    let mut stream = match family.max_k() {
        Some(max_k) => ColumnStream::truncated(f, max_k),
        None => ColumnStream::new(f),
    };
    let mut hits = Vec::new();
    let mut checked = 0u64;
    for n in 1..=*range.end() {
        let col = stream.advance()?;
        if n < *range.start() {
            continue;
        }
        let top = family.max_k().map_or(n as usize, |m| m.min(n as usize));
        for k in 1..=top {
            checked += 1;
            if col.is_integer(k) {
                hits.push(Hit {
                    poly: f.clone(),
                    k,
                    n,
                    value: col.sigma(k),
                });
            }
        }
    }
    Ok((hits, checked))
}

/// Runs the family on `jobs` worker threads (all cores when `None`).
pub fn run_sweep(family: &dyn SweepFamily, jobs: Option<usize>) -> Result<SweepReport, VerifyError> {
    let start = Instant::now();
    let polys = family.polynomials();
    let work = || -> Result<Vec<(Vec<Hit>, u64)>, VerifyError> {
        polys.par_iter().map(|f| scan_one(family, f)).collect()
    };
    let results = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| VerifyError::ThreadPool(e.to_string()))?
            .install(work)?,
        None => work()?,
    };

    let mut hits = Vec::new();
    let mut instances_checked = 0;
    for (h, c) in results {
        hits.extend(h);
        instances_checked += c;
    }
    let mut keyed: Vec<(String, Hit)> = hits.into_iter().map(|h| (h.poly.render(), h)).collect();
    keyed.sort_by(|a, b| (&a.0, a.1.n, a.1.k).cmp(&(&b.0, b.1.n, b.1.k)));
    let hits: Vec<Hit> = keyed.into_iter().map(|(_, h)| h).collect();
    let unexpected = hits
        .iter()
        .filter(|h| !family.is_expected(&h.poly, h.k, h.n))
        .cloned()
        .collect();

    Ok(SweepReport {
        family: family.description(),
        ranges: family.ranges(),
        instances_checked,
        hits,
        unexpected,
        wall_time: start.elapsed(),
    })
}

/// Nonnegative coefficients up to `coeff_max`, degree `2..=max_degree`,
/// leading coefficient at least 1. Only `x^m` at `k = n = 1` may hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremFamily {
    pub max_degree: usize,
    pub coeff_max: u64,
    pub n_max: u64,
}

impl SweepFamily for TheoremFamily {
    fn description(&self) -> String {
        "nonnegative integer coefficients, degree >= 2".to_string()
    }

    fn ranges(&self) -> BTreeMap<String, u64> {
        BTreeMap::from([
            ("max_degree".to_string(), self.max_degree as u64),
            ("coeff_max".to_string(), self.coeff_max),
            ("n_max".to_string(), self.n_max),
        ])
    }

    fn polynomials(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if self.coeff_max == 0 {
            return out;
        }
        let c = self.coeff_max as i64;
        for degree in 2..=self.max_degree {
            for lead in 1..=c {
                let mut coeffs = vec![0i64; degree + 1];
                coeffs[degree] = lead;
                'odometer: loop {
                    out.push(Polynomial::from_i64s(&coeffs).expect("leading coefficient >= 1"));
                    for digit in coeffs[..degree].iter_mut() {
                        if *digit < c {
                            *digit += 1;
                            continue 'odometer;
                        }
                        *digit = 0;
                    }
                    break;
                }
            }
        }
        out
    }

    fn n_range(&self) -> RangeInclusive<u64> {
        1..=self.n_max
    }

    fn is_expected(&self, f: &Polynomial, k: usize, n: u64) -> bool {
        k == 1 && n == 1 && f.term_count() == 1 && f.leading() == &1.into()
    }
}

pub fn theorem_family(max_degree: usize, coeff_max: u64, n_max: u64) -> TheoremFamily {
    TheoremFamily {
        max_degree,
        coeff_max,
        n_max,
    }
}

pub fn theorem_sweep(
    max_degree: usize,
    coeff_max: u64,
    n_max: u64,
    jobs: Option<usize>,
) -> Result<SweepReport, VerifyError> {
    run_sweep(&theorem_family(max_degree, coeff_max, n_max), jobs)
}

/// `f(x) = x`, `k = 1` only: harmonic numbers are never integers past `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicFamily {
    pub n_min: u64,
    pub n_max: u64,
}

impl SweepFamily for HarmonicFamily {
    fn description(&self) -> String {
        "harmonic sums, f(x) = x, k = 1".to_string()
    }

    fn ranges(&self) -> BTreeMap<String, u64> {
        BTreeMap::from([
            ("n_min".to_string(), self.n_min),
            ("n_max".to_string(), self.n_max),
        ])
    }

    fn polynomials(&self) -> Vec<Polynomial> {
        vec![Polynomial::monomial(1)]
    }

    fn n_range(&self) -> RangeInclusive<u64> {
        self.n_min..=self.n_max
    }

    fn max_k(&self) -> Option<usize> {
        Some(1)
    }

    fn is_expected(&self, _: &Polynomial, _: usize, _: u64) -> bool {
        false
    }
}

/// `f(x) = x`, every `k`: the only hits are `(1, 1)` and `(2, 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChenTangFamily {
    pub n_min: u64,
    pub n_max: u64,
}

impl SweepFamily for ChenTangFamily {
    fn description(&self) -> String {
        "f(x) = x, all k".to_string()
    }

    fn ranges(&self) -> BTreeMap<String, u64> {
        BTreeMap::from([
            ("n_min".to_string(), self.n_min),
            ("n_max".to_string(), self.n_max),
        ])
    }

    fn polynomials(&self) -> Vec<Polynomial> {
        vec![Polynomial::monomial(1)]
    }

    fn n_range(&self) -> RangeInclusive<u64> {
        self.n_min..=self.n_max
    }

    fn is_expected(&self, _: &Polynomial, k: usize, n: u64) -> bool {
        matches!((k, n), (1, 1) | (2, 3))
    }
}

/// `f(x) = a x + b` with `1 <= a <= a_max`, `1 <= b <= b_max`, `n >= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WangHongFamily {
    pub a_max: u64,
    pub b_max: u64,
    pub n_min: u64,
    pub n_max: u64,
}

impl SweepFamily for WangHongFamily {
    fn description(&self) -> String {
        "f(x) = ax + b, a, b >= 1, all k".to_string()
    }

    fn ranges(&self) -> BTreeMap<String, u64> {
        BTreeMap::from([
            ("a_max".to_string(), self.a_max),
            ("b_max".to_string(), self.b_max),
            ("n_min".to_string(), self.n_min),
            ("n_max".to_string(), self.n_max),
        ])
    }

    fn polynomials(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for a in 1..=self.a_max as i64 {
            for b in 1..=self.b_max as i64 {
                out.push(Polynomial::from_i64s(&[b, a]).expect("a >= 1"));
            }
        }
        out
    }

    fn n_range(&self) -> RangeInclusive<u64> {
        self.n_min..=self.n_max
    }

    fn is_expected(&self, _: &Polynomial, _: usize, _: u64) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PriorKind {
    Harmonic,
    ChenTang,
    WangHong,
}

impl PriorKind {
    pub const ALL: [PriorKind; 3] = [PriorKind::Harmonic, PriorKind::ChenTang, PriorKind::WangHong];

    pub fn name(self) -> &'static str {
        match self {
            PriorKind::Harmonic => "harmonic",
            PriorKind::ChenTang => "chen-tang",
            PriorKind::WangHong => "wang-hong",
        }
    }

    /// Smallest `n` for which the known result claims no hits.
    pub fn default_n_min(self) -> u64 {
        match self {
            PriorKind::Harmonic => 2,
            PriorKind::ChenTang => 1,
            PriorKind::WangHong => 4,
        }
    }
}

impl fmt::Display for PriorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PriorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
                format!("unknown kind {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PriorParams {
    pub n_min: Option<u64>,
    pub n_max: u64,
    pub a_max: u64,
    pub b_max: u64,
}

impl Default for PriorParams {
    fn default() -> Self {
        Self {
            n_min: None,
            n_max: 200,
            a_max: 8,
            b_max: 8,
        }
    }
}

/// Builds the family registered under `kind`.
pub fn prior_family(kind: PriorKind, params: PriorParams) -> Result<Box<dyn SweepFamily>, VerifyError> {
    let n_min = params.n_min.unwrap_or(kind.default_n_min());
    if n_min < 1 || n_min > params.n_max {
        return Err(VerifyError::Precondition(format!(
            "empty n range {n_min}..={}",
            params.n_max
        )));
    }
    if n_min < kind.default_n_min() {
        return Err(VerifyError::Precondition(format!(
            "{kind} requires n >= {}",
            kind.default_n_min()
        )));
    }
    let n_max = params.n_max;
    Ok(match kind {
        PriorKind::Harmonic => Box::new(HarmonicFamily { n_min, n_max }),
        PriorKind::ChenTang => Box::new(ChenTangFamily { n_min, n_max }),
        PriorKind::WangHong => {
            if params.a_max < 1 || params.b_max < 1 {
                return Err(VerifyError::Precondition("a_max and b_max must be >= 1".into()));
            }
            Box::new(WangHongFamily {
                a_max: params.a_max,
                b_max: params.b_max,
                n_min,
                n_max,
            })
        }
    })
}

pub fn prior_results_sweep(
    kind: PriorKind,
    params: PriorParams,
    jobs: Option<usize>,
) -> Result<SweepReport, VerifyError> {
    run_sweep(prior_family(kind, params)?.as_ref(), jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn theorem_family_size() {
        // leading in 1..=c, the other d coefficients in 0..=c
        let fam = theorem_family(4, 3, 1);
        assert_eq!(fam.polynomials().len(), 3 * 16 + 3 * 64 + 3 * 256);
        let fam = theorem_family(2, 1, 1);
        let rendered: Vec<String> = fam.polynomials().iter().map(|p| p.render()).collect();
        assert_eq!(rendered, ["x^2", "x^2 + 1", "x^2 + x", "x^2 + x + 1"]);
        assert!(theorem_family(3, 0, 5).polynomials().is_empty());
    }

    #[test]
    fn small_theorem_sweep() {
        let r = theorem_sweep(2, 1, 10, Some(2)).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert_eq!(r.hits[0].poly, Polynomial::monomial(2));
        assert_eq!((r.hits[0].k, r.hits[0].n), (1, 1));
        assert_eq!(r.hits[0].value, int(1));
        assert!(r.is_expected_pattern());
        assert_eq!(r.instances_checked, 4 * 55);
    }

    #[test]
    fn empty_family_gives_empty_report() {
        let r = theorem_sweep(3, 0, 10, None).unwrap();
        assert!(r.hits.is_empty());
        assert_eq!(r.instances_checked, 0);
    }

    #[test]
    fn chen_tang_small_hits() {
        let p = PriorParams {
            n_max: 4,
            ..Default::default()
        };
        let r = prior_results_sweep(PriorKind::ChenTang, p, None).unwrap();
        let keys: Vec<(usize, u64)> = r.hits.iter().map(|h| (h.k, h.n)).collect();
        assert_eq!(keys, [(1, 1), (2, 3)]);
        assert!(r.is_expected_pattern());
    }

    #[test]
    fn prior_preconditions() {
        let p = PriorParams {
            n_min: Some(3),
            n_max: 10,
            ..Default::default()
        };
        assert!(prior_family(PriorKind::WangHong, p).is_err());
        let p = PriorParams {
            n_min: Some(1),
            n_max: 10,
            ..Default::default()
        };
        assert!(prior_family(PriorKind::Harmonic, p).is_err());
        let p = PriorParams {
            n_min: Some(11),
            n_max: 10,
            ..Default::default()
        };
        assert!(prior_family(PriorKind::ChenTang, p).is_err());
        assert_eq!("wang-hong".parse::<PriorKind>(), Ok(PriorKind::WangHong));
        assert!("erdos".parse::<PriorKind>().is_err());
    }

    #[test]
    fn unexpected_hits_are_flagged() {
        // 2x - 3 is outside every theorem family but exercises the flagging
        struct Odd;
        impl SweepFamily for Odd {
            fn description(&self) -> String {
                "2x - 3".into()
            }
            fn ranges(&self) -> BTreeMap<String, u64> {
                BTreeMap::new()
            }
            fn polynomials(&self) -> Vec<Polynomial> {
                vec![Polynomial::from_i64s(&[-3, 2]).unwrap()]
            }
            fn n_range(&self) -> RangeInclusive<u64> {
                1..=3
            }
            fn is_expected(&self, _: &Polynomial, k: usize, _: u64) -> bool {
                k == 1
            }
        }
        let r = run_sweep(&Odd, Some(1)).unwrap();
        let keys: Vec<(usize, u64)> = r.hits.iter().map(|h| (h.k, h.n)).collect();
        assert_eq!(keys, [(1, 1), (1, 2), (2, 2), (2, 3)]);
        let bad: Vec<(usize, u64)> = r.unexpected.iter().map(|h| (h.k, h.n)).collect();
        assert_eq!(bad, [(2, 2), (2, 3)]);
    }
}
