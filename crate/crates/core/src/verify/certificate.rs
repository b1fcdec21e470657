//! Replayable bound chains.
//!
//! A chain is a sequence `t_0 R_1 t_1 R_2 ... R_m t_m` of terms joined by
//! `<`, `<=` or `=`. Terms are exact rationals or rational intervals that
//! contain some real constant. A link holds when the upper end of its left
//! term is below the lower end of its right term, so every link is a true
//! statement about the real numbers involved and the chain is transitive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{ClassTag, Polynomial};
use crate::rational::{int, serde_fraction, to_decimal, Fraction, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Term {
    Exact {
        label: String,
        #[serde(with = "serde_fraction")]
        value: Rational,
    },
    /// `lo <= constant <= hi`, certified from `terms` exact series terms.
    Interval {
        label: String,
        #[serde(with = "serde_fraction")]
        lo: Rational,
        #[serde(with = "serde_fraction")]
        hi: Rational,
        terms: u64,
    },
}

impl Term {
    pub fn exact(label: impl Into<String>, value: Rational) -> Self {
        Term::Exact {
            label: label.into(),
            value,
        }
    }

    pub fn interval(label: impl Into<String>, lo: Rational, hi: Rational, terms: u64) -> Self {
        Term::Interval {
            label: label.into(),
            lo,
            hi,
            terms,
        }
    }

    pub fn constant(value: i64) -> Self {
        Term::exact(value.to_string(), int(value))
    }

    pub fn label(&self) -> &str {
        match self {
            Term::Exact { label, .. } | Term::Interval { label, .. } => label,
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            Term::Exact { value, .. } => value,
            Term::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            Term::Exact { value, .. } => value,
            Term::Interval { hi, .. } => hi,
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        match self {
            Term::Exact { value, .. } => Some(value),
            Term::Interval { .. } => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Exact { label, value } => {
                if *label == value.to_string() {
                    write!(f, "{label}")
                } else {
                    write!(f, "{label} = {} (≈ {})", Fraction(value), to_decimal(value, 12))
                }
            }
            Term::Interval { label, lo, hi, terms } => write!(
                f,
                "{label} ∈ [{}, {}] (N = {terms})",
                to_decimal(lo, 12),
                to_decimal(hi, 12)
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        self == Relation::Lt
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "≤",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundStep {
    pub description: String,
    pub lhs: Term,
    pub relation: Relation,
    pub rhs: Term,
}

impl BoundStep {
    /// Re-evaluates the step with exact comparisons.
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Lt => self.lhs.upper() < self.rhs.lower(),
            Relation::Le => self.lhs.upper() <= self.rhs.lower(),
            Relation::Eq => match (self.lhs.exact_value(), self.rhs.exact_value()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl fmt::Display for BoundStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}   [{}]",
            self.lhs.label(),
            self.relation.symbol(),
            self.rhs.label(),
            self.description
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    StrictlyBetween0And1,
    StrictlyBetween1And2,
    EqualsOne,
}

impl Conclusion {
    /// The open interval `(lower, upper)`; `EqualsOne` has none.
    pub fn bounds(self) -> Option<(Rational, Rational)> {
        match self {
            Conclusion::StrictlyBetween0And1 => Some((int(0), int(1))),
            Conclusion::StrictlyBetween1And2 => Some((int(1), int(2))),
            Conclusion::EqualsOne => None,
        }
    }

    pub fn admits(self, value: &Rational) -> bool {
        match self.bounds() {
            Some((lo, hi)) => &lo < value && value < &hi,
            None => *value == int(1),
        }
    }

    pub fn excludes_integers(self) -> bool {
        self != Conclusion::EqualsOne
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    KGe2,
    MonomialLeadGe2,
    MonomialLeadOne,
    CaseOne,
    CaseTwo,
    CaseThree,
}

impl CaseTag {
    pub fn from_class(tag: ClassTag) -> Option<Self> {
        Some(match tag {
            ClassTag::MonomialLeadGe2 => CaseTag::MonomialLeadGe2,
            ClassTag::MonomialLeadOne => CaseTag::MonomialLeadOne,
            ClassTag::CaseOne => CaseTag::CaseOne,
            ClassTag::CaseTwo => CaseTag::CaseTwo,
            ClassTag::CaseThree => CaseTag::CaseThree,
            _ => return None,
        })
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn sigma_label(k: usize, n: u64) -> String {
    format!("σ_{k}({n})")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub poly: Polynomial,
    pub k: usize,
    pub n: u64,
    pub case_tag: CaseTag,
    /// `sigma_k(n)` as computed when the certificate was built.
    #[serde(with = "serde_fraction")]
    pub value: Rational,
    pub bound_chain: Vec<BoundStep>,
    pub conclusion: Conclusion,
}

impl Certificate {
    /// Replays every step and checks that the chain, read left to right,
    /// proves `lower < sigma < upper` for the conclusion's interval.
    pub fn check(&self) -> Result<(), String> {
        let chain = &self.bound_chain;
        if chain.is_empty() {
            return Err("empty bound chain".into());
        }
        for (i, step) in chain.iter().enumerate() {
            if !step.holds() {
                return Err(format!("step {i} does not hold: {step}"));
            }
        }
        for (i, pair) in chain.windows(2).enumerate() {
            if pair[0].rhs != pair[1].lhs {
                return Err(format!("steps {i} and {} are not linked", i + 1));
            }
        }

        let sigma = Term::exact(sigma_label(self.k, self.n), self.value.clone());
        let terms: Vec<&Term> = std::iter::once(&chain[0].lhs)
            .chain(chain.iter().map(|s| &s.rhs))
            .collect();
        let Some(pos) = terms.iter().position(|t| **t == sigma) else {
            return Err(format!("{} does not appear in the chain", sigma.label()));
        };

        let Some((lower, upper)) = self.conclusion.bounds() else {
            return match chain.as_slice() {
                [only] if only.relation == Relation::Eq && self.value == int(1) => Ok(()),
                _ => Err("EqualsOne needs a single equality with value 1".into()),
            };
        };
        if terms[0].exact_value() != Some(&lower) {
            return Err(format!("chain must start at {lower}"));
        }
        if terms[terms.len() - 1].exact_value() != Some(&upper) {
            return Err(format!("chain must end at {upper}"));
        }
        if !chain[..pos].iter().any(|s| s.relation.is_strict()) {
            return Err("no strict step below σ".into());
        }
        if !chain[pos..].iter().any(|s| s.relation.is_strict()) {
            return Err("no strict step above σ".into());
        }
        Ok(())
    }
}

/// Builds a linked chain one link at a time.
#[derive(Debug)]
pub(crate) struct ChainBuilder {
    steps: Vec<BoundStep>,
    current: Term,
}

impl ChainBuilder {
    pub fn start(term: Term) -> Self {
        Self {
            steps: Vec::new(),
            current: term,
        }
    }

    pub fn then(mut self, description: impl Into<String>, relation: Relation, term: Term) -> Self {
        let lhs = std::mem::replace(&mut self.current, term.clone());
        self.steps.push(BoundStep {
            description: description.into(),
            lhs,
            relation,
            rhs: term,
        });
        self
    }

    pub fn finish(self) -> Vec<BoundStep> {
        self.steps
    }
}
