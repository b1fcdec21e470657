//! Exploration for polynomials outside the theorem's hypotheses, where a
//! finite hit set is conjectured but not proved.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;
use crate::symfunc::ColumnStream;

use super::{Hit, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub family: String,
    pub poly: Polynomial,
    pub ranges: BTreeMap<String, u64>,
    pub instances_checked: u64,
    pub hits: Vec<Hit>,
    pub last_hit_n: Option<u64>,
    /// One past the last hit: no hit was seen for `n >= candidate_N`.
    #[serde(rename = "candidate_N")]
    pub candidate_n: u64,
    pub note: String,
}

/// Lists every integral `sigma_k(n)` with `1 <= k <= n <= n_max`.
///
/// This is evidence, not proof: `candidate_n` only says nothing was found
/// between it and `n_max`.
pub fn explore_conjecture(f: &Polynomial, n_max: u64) -> Result<ConjectureReport, VerifyError> {
    if let Some(i) = f.first_zero_at_positive_arg(n_max) {
        return Err(VerifyError::HypothesisViolated(i));
    }
    let mut stream = ColumnStream::new(f);
    let mut hits = Vec::new();
    let mut checked = 0u64;
    for n in 1..=n_max {
        let col = stream.advance()?;
        for k in 1..=n as usize {
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
    let last_hit_n = hits.iter().map(|h| h.n).max();
    Ok(ConjectureReport {
        family: "conjecture exploration".to_string(),
        poly: f.clone(),
        ranges: BTreeMap::from([("n_max".to_string(), n_max)]),
        instances_checked: checked,
        hits,
        last_hit_n,
        candidate_n: last_hit_n.map_or(1, |n| n + 1),
        note: format!("verified up to n_max = {n_max}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::int;

    #[test]
    fn x2_minus_2() {
        let r = explore_conjecture(&parse_poly("x^2-2").unwrap(), 40).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert_eq!((r.hits[0].k, r.hits[0].n), (1, 1));
        assert_eq!(r.hits[0].value, int(-1));
        assert_eq!(r.candidate_n, 2);
        assert_eq!(r.instances_checked, 40 * 41 / 2);
    }

    #[test]
    fn no_hits_gives_candidate_one() {
        let r = explore_conjecture(&parse_poly("x^2-3").unwrap(), 30).unwrap();
        assert!(r.hits.is_empty());
        assert_eq!(r.last_hit_n, None);
        assert_eq!(r.candidate_n, 1);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["candidate_N"], 1);
        assert_eq!(json["note"], "verified up to n_max = 30");
    }

    #[test]
    fn zero_at_positive_integer() {
        assert_eq!(
            explore_conjecture(&parse_poly("x^2-4").unwrap(), 10),
            Err(VerifyError::HypothesisViolated(2))
        );
        // the root lies beyond the explored range
        assert!(explore_conjecture(&parse_poly("x-20").unwrap(), 10).is_ok());
    }
}
