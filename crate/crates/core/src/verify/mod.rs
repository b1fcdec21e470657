//! Non-integrality certificates, regression sweeps over polynomial
//! families, and the conjecture explorer.

mod certificate;
mod certifiers;
mod conjecture;
mod sweep;

use crate::bounds::{BoundsError, Refinement};
use crate::poly::{ClassTag, Polynomial};
use crate::rational::Rational;
use crate::symfunc::{sigma_column, SigmaError};

pub use certificate::{sigma_label, BoundStep, CaseTag, Certificate, Conclusion, Relation, Term};
pub use certifiers::{
    case_one_threshold, CaseCertifier, CaseOneCertifier, CaseThreeCertifier, CaseTwoCertifier,
    CertInput, CertifierRegistry, DescentCertifier, LeadGe2Certifier, LeadOneCertifier,
};
pub use conjecture::{explore_conjecture, ConjectureReport};
pub use sweep::{
    prior_family, prior_results_sweep, run_sweep, theorem_family, theorem_sweep, ChenTangFamily,
    HarmonicFamily, Hit, PriorKind, PriorParams, SweepFamily, SweepReport, TheoremFamily,
    WangHongFamily,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exceptional case: the value is the integer {value}")]
    ExceptionalCase { value: Rational },
    #[error("hypothesis violated: f({0}) = 0")]
    HypothesisViolated(u64),
    #[error("no certifier applies to {0}")]
    NoCertifier(String),
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error("certificate rejected: {0}")]
    ChainRejected(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Certificate that `sigma_k(n)` is not an integer, for `f` with nonnegative
/// coefficients and degree at least 2.
pub fn certify_noninteger(f: &Polynomial, k: usize, n: u64) -> Result<Certificate, VerifyError> {
    certify_with(&CertifierRegistry::default(), f, k, n, Refinement::default())
}

pub fn certify_with(
    registry: &CertifierRegistry,
    f: &Polynomial,
    k: usize,
    n: u64,
    refinement: Refinement,
) -> Result<Certificate, VerifyError> {
    if f.has_negative_coeff() || f.degree() < 2 {
        return Err(VerifyError::Precondition(format!(
            "f = {f} must have nonnegative coefficients and degree at least 2"
        )));
    }
    if k < 1 || k as u64 > n {
        return Err(VerifyError::Precondition(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let class = f.classify();
    let value = sigma_column(f, n)?.sigma(k);
    if class.tag == ClassTag::MonomialLeadOne && k == 1 && n == 1 {
        return Err(VerifyError::ExceptionalCase { value });
    }
    let certifier = registry
        .find(&class, k)
        .ok_or_else(|| VerifyError::NoCertifier(format!("{} with k = {k}", class.tag)))?;
    let input = CertInput {
        f,
        class,
        k,
        n,
        value: &value,
        refinement,
    };
    let (bound_chain, conclusion) = certifier.build(&input)?;
    let cert = Certificate {
        poly: f.clone(),
        k,
        n,
        case_tag: certifier.tag(),
        value,
        bound_chain,
        conclusion,
    };
    cert.check().map_err(VerifyError::ChainRejected)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::{int, ratio};
    use crate::symfunc::sigma_oracle;

    fn p(s: &str) -> Polynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn exceptional_case() {
        for m in 2..6 {
            assert_eq!(
                certify_noninteger(&Polynomial::monomial(m), 1, 1),
                Err(VerifyError::ExceptionalCase { value: int(1) })
            );
        }
    }

    #[test]
    fn case_one_above_threshold() {
        let c = certify_noninteger(&p("x^2+1"), 1, 20).unwrap();
        assert_eq!(c.case_tag, CaseTag::CaseOne);
        assert_eq!(c.conclusion, Conclusion::StrictlyBetween1And2);
        let anchor = &c.bound_chain[0];
        assert_eq!(anchor.lhs, Term::constant(1));
        assert_eq!(anchor.rhs.label(), "σ_1(13)");
        assert_eq!(c.check(), Ok(()));
    }

    #[test]
    fn case_one_below_threshold() {
        for n in 1..=13 {
            let c = certify_noninteger(&p("x^2+1"), 1, n).unwrap();
            let expected = if n <= 12 {
                Conclusion::StrictlyBetween0And1
            } else {
                Conclusion::StrictlyBetween1And2
            };
            assert_eq!(c.conclusion, expected, "n = {n}");
        }
    }

    #[test]
    fn case_three_telescopes() {
        let c = certify_noninteger(&p("x^2+x"), 1, 50).unwrap();
        assert_eq!(c.case_tag, CaseTag::CaseThree);
        assert_eq!(c.conclusion, Conclusion::StrictlyBetween0And1);
        let closed = c
            .bound_chain
            .iter()
            .find(|s| s.relation == Relation::Eq)
            .unwrap();
        assert_eq!(closed.rhs.exact_value(), Some(&ratio(50, 51)));
        // x^2 + x is exactly j^2 + j, so sigma equals the telescoping sum
        assert_eq!(c.value, ratio(50, 51));
    }

    #[test]
    fn descent_chain_for_k3() {
        let f = p("x^3+2");
        let c = certify_noninteger(&f, 3, 5).unwrap();
        assert_eq!(c.case_tag, CaseTag::KGe2);
        assert_eq!(c.value, ratio(3379, 1_458_468));
        assert_eq!(c.value, sigma_oracle(&f, 5, 3).unwrap());
        // 0 < σ_3(5) <= I < σ_2(4) < π⁴/120 < 1
        assert_eq!(c.bound_chain.len(), 5);
    }

    #[test]
    fn case_two_and_monomials() {
        for (text, tag, n) in [
            ("x^2+2", CaseTag::CaseTwo, 1),
            ("2x^2+1", CaseTag::CaseTwo, 2),
            ("3x^2+3", CaseTag::CaseTwo, 30),
            ("2x^2", CaseTag::MonomialLeadGe2, 1),
            ("3x^4", CaseTag::MonomialLeadGe2, 25),
            ("x^5", CaseTag::MonomialLeadOne, 2),
            ("x^2", CaseTag::MonomialLeadOne, 150),
        ] {
            let c = certify_noninteger(&p(text), 1, n).unwrap();
            assert_eq!(c.case_tag, tag, "{text}");
            assert!(c.conclusion.admits(&c.value));
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            certify_noninteger(&p("x^2-1"), 1, 3),
            Err(VerifyError::Precondition(_))
        ));
        assert!(matches!(
            certify_noninteger(&p("x+1"), 1, 3),
            Err(VerifyError::Precondition(_))
        ));
        assert!(matches!(
            certify_noninteger(&p("x^2"), 4, 3),
            Err(VerifyError::Precondition(_))
        ));
        assert!(matches!(
            certify_noninteger(&p("x^2"), 0, 3),
            Err(VerifyError::Precondition(_))
        ));
    }

    #[test]
    fn unresolved_when_cap_is_too_small() {
        let reg = CertifierRegistry::default();
        let r = certify_with(&reg, &p("x^2"), 1, 500, Refinement::new(10, 10));
        // refinement starts past n, so the cap alone limits it
        assert!(matches!(r, Err(VerifyError::Unresolved(_))));
    }

    #[test]
    fn registry_dispatch() {
        let reg = CertifierRegistry::default();
        let class = p("x^2+1").classify();
        assert_eq!(reg.find(&class, 1).unwrap().tag(), CaseTag::CaseOne);
        assert_eq!(reg.find(&class, 2).unwrap().tag(), CaseTag::KGe2);
        assert!(reg.find(&p("x^2-1").classify(), 1).is_none());
        assert_eq!(reg.tags().len(), 6);
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = certify_noninteger(&p("x^3+2"), 2, 4).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.check(), Ok(()));
    }
}
