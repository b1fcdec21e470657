//! One certifier per branch of the non-integrality argument, looked up by
//! polynomial class and `k`.

use std::fmt;
use std::sync::OnceLock;

use crate::bounds::{telescoping_bound, zeta_partial_sum, ConstantId, Enclosure, Refinement};
use crate::poly::{ClassTag, PolyClass, Polynomial};
use crate::rational::{int, ratio, Rational};
use crate::symfunc::{sigma_column, ColumnStream};

use super::certificate::{sigma_label, BoundStep, CaseTag, ChainBuilder, Conclusion, Relation, Term};
use super::VerifyError;

/// Everything a certifier needs about one `(f, k, n)` instance.
#[derive(Debug, Clone)]
pub struct CertInput<'a> {
    pub f: &'a Polynomial,
    pub class: PolyClass,
    pub k: usize,
    pub n: u64,
    /// `sigma_k(n)`
    pub value: &'a Rational,
    pub refinement: Refinement,
}

impl CertInput<'_> {
    fn sigma_term(&self) -> Term {
        Term::exact(sigma_label(self.k, self.n), self.value.clone())
    }

    /// Refinement that starts no lower than `n + 1` terms; the margins in
    /// the single-sum bounds shrink like `1/n`.
    fn refinement_past_n(&self) -> Refinement {
        Refinement::new(self.refinement.start.max(self.n + 1), self.refinement.cap)
    }
}

pub trait CaseCertifier: Send + Sync {
    fn tag(&self) -> CaseTag;

    fn applies(&self, class: &PolyClass, k: usize) -> bool;

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError>;
}

fn refine(
    refinement: Refinement,
    id: ConstantId,
    what: &str,
    accept: impl FnMut(&Enclosure) -> bool,
) -> Result<Enclosure, VerifyError> {
    let (enc, ok) = refinement.refine(id, accept)?;
    if ok {
        Ok(enc)
    } else {
        Err(VerifyError::Unresolved(format!(
            "{what} not decided with {} terms",
            enc.terms
        )))
    }
}

fn interval_term(label: &str, enc: &Enclosure) -> Term {
    Term::interval(label, enc.lo.clone(), enc.hi.clone(), enc.terms)
}

/// `k >= 2`: iterate `sigma_{j+1}(m) <= (zeta(2)-1) sigma_j(m-1) < sigma_j(m-1)`
/// down to `sigma_2(n-k+2)`, then `sigma_2 < pi^4/120 < 1`.
#[derive(Debug, Default)]
pub struct DescentCertifier;

impl CaseCertifier for DescentCertifier {
    fn tag(&self) -> CaseTag {
        CaseTag::KGe2
    }

    fn applies(&self, class: &PolyClass, k: usize) -> bool {
        k >= 2 && CaseTag::from_class(class.tag).is_some()
    }

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError> {
        let (k, n) = (input.k, input.n);
        // sigma_{k-j}(n-j) for j = 0 ..= k-2
        let base = n - (k as u64 - 2);
        let mut ladder: Vec<Rational> = Vec::with_capacity(k - 1);
        let mut stream = ColumnStream::new(input.f);
        for m in 1..=n {
            let col = stream.advance()?;
            if m >= base {
                ladder.push(col.sigma(k - (n - m) as usize));
            }
        }
        ladder.reverse();

        let mut chain = ChainBuilder::start(Term::constant(0)).then(
            "every f(i) > 0, so every σ is positive",
            Relation::Lt,
            input.sigma_term(),
        );
        for j in 0..k - 2 {
            let (kk, m) = (k - j, n - j as u64);
            let cur = &ladder[j];
            let next = &ladder[j + 1];
            let enc = refine(
                input.refinement_past_n(),
                ConstantId::Zeta2Minus1,
                "descent step",
                |e| cur <= &(&e.lo * next) && e.hi < int(1),
            )?;
            let label = format!("(ζ(2)−1)·{}", sigma_label(kk - 1, m - 1));
            let scaled = Term::interval(label, &enc.lo * next, &enc.hi * next, enc.terms);
            chain = chain
                .then(
                    "last index summed against Σ_{i≥2} 1/i², using f(i) ≥ i²",
                    Relation::Le,
                    scaled,
                )
                .then(
                    "ζ(2) − 1 < 1",
                    Relation::Lt,
                    Term::exact(sigma_label(kk - 1, m - 1), next.clone()),
                );
        }
        let sigma2 = ladder.last().expect("k >= 2");
        let enc = refine(input.refinement_past_n(), ConstantId::Pi4Over120, "σ_2 bound", |e| {
            sigma2 < &e.lo && e.hi < int(1)
        })?;
        let steps = chain
            .then(
                "σ_2 ≤ Σ_{i<j} 1/(i²j²) < (ζ(2)² − ζ(4))/2",
                Relation::Lt,
                interval_term("π⁴/120", &enc),
            )
            .then("π⁴/120 < 1", Relation::Lt, Term::constant(1))
            .finish();
        Ok((steps, Conclusion::StrictlyBetween0And1))
    }
}

/// `a x^m` with `a >= 2`: `sigma_1(n) <= (1/2) sum 1/j^2 < pi^2/12 < 1`.
#[derive(Debug, Default)]
pub struct LeadGe2Certifier;

impl CaseCertifier for LeadGe2Certifier {
    fn tag(&self) -> CaseTag {
        CaseTag::MonomialLeadGe2
    }

    fn applies(&self, class: &PolyClass, k: usize) -> bool {
        k == 1 && class.tag == ClassTag::MonomialLeadGe2
    }

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError> {
        let half_sum = &*zeta_partial_sum(2, input.n)? / int(2);
        let enc = refine(input.refinement_past_n(), ConstantId::Pi2Over12, "π²/12 bound", |e| {
            half_sum < e.lo && e.hi < int(1)
        })?;
        let steps = ChainBuilder::start(Term::constant(0))
            .then("f(j) > 0", Relation::Lt, input.sigma_term())
            .then(
                "f(j) = a·j^m ≥ 2j²",
                Relation::Le,
                Term::exact(format!("½·Σ_{{j≤{}}} 1/j²", input.n), half_sum),
            )
            .then("partial sum below ζ(2)/2", Relation::Lt, interval_term("π²/12", &enc))
            .then("π²/12 < 1", Relation::Lt, Term::constant(1))
            .finish();
        Ok((steps, Conclusion::StrictlyBetween0And1))
    }
}

/// `x^m`, `n >= 2`: `1 < sigma_1(n) <= zeta(2) < 2`.
#[derive(Debug, Default)]
pub struct LeadOneCertifier;

impl CaseCertifier for LeadOneCertifier {
    fn tag(&self) -> CaseTag {
        CaseTag::MonomialLeadOne
    }

    fn applies(&self, class: &PolyClass, k: usize) -> bool {
        k == 1 && class.tag == ClassTag::MonomialLeadOne
    }

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError> {
        if input.n < 2 {
            return Err(VerifyError::ExceptionalCase {
                value: input.value.clone(),
            });
        }
        let value = input.value;
        let enc = refine(input.refinement_past_n(), ConstantId::Pi2Over6, "ζ(2) bound", |e| {
            value <= &e.lo && e.hi < int(2)
        })?;
        let steps = ChainBuilder::start(Term::constant(1))
            .then("σ_1(n) = 1 + Σ_{2≤j≤n} 1/j^m", Relation::Lt, input.sigma_term())
            .then("1/j^m ≤ 1/j²", Relation::Le, interval_term("ζ(2) = π²/6", &enc))
            .then("π²/6 < 2", Relation::Lt, Term::constant(2))
            .finish();
        Ok((steps, Conclusion::StrictlyBetween1And2))
    }
}

/// `sigma_1(12)` and `sigma_1(13)` for `x^2 + 1`, computed once.
pub fn case_one_threshold() -> &'static (Rational, Rational) {
    static PAIR: OnceLock<(Rational, Rational)> = OnceLock::new();
    PAIR.get_or_init(|| {
        let f = Polynomial::from_i64s(&[1, 0, 1]).expect("x^2 + 1");
        let col = sigma_column(&f, 13).expect("x^2 + 1 has no positive roots");
        let s13 = col.sigma(1);
        let s12 = &s13 - ratio(1, 170);
        (s12, s13)
    })
}

/// `x^2 + 1`: below 1 up to `n = 12`, in `(1, 2)` from `n = 13` on.
#[derive(Debug, Default)]
pub struct CaseOneCertifier;

impl CaseCertifier for CaseOneCertifier {
    fn tag(&self) -> CaseTag {
        CaseTag::CaseOne
    }

    fn applies(&self, class: &PolyClass, k: usize) -> bool {
        k == 1 && class.tag == ClassTag::CaseOne
    }

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError> {
        let (s12, s13) = case_one_threshold();
        let n = input.n;
        if n <= 12 {
            let mut chain = ChainBuilder::start(Term::constant(0)).then(
                "f(j) > 0",
                Relation::Lt,
                input.sigma_term(),
            );
            if n < 12 {
                chain = chain.then(
                    "partial sums increase in n",
                    Relation::Le,
                    Term::exact(sigma_label(1, 12), s12.clone()),
                );
            }
            let steps = chain
                .then("σ_1(12) < 1 by exact computation", Relation::Lt, Term::constant(1))
                .finish();
            return Ok((steps, Conclusion::StrictlyBetween0And1));
        }

        let partial = zeta_partial_sum(2, n)?;
        let enc = refine(input.refinement_past_n(), ConstantId::Zeta2, "ζ(2) bound", |e| {
            *partial <= e.lo && e.hi < int(2)
        })?;
        let mut chain = ChainBuilder::start(Term::constant(1));
        if n > 13 {
            chain = chain
                .then(
                    "σ_1(13) > 1 by exact computation",
                    Relation::Lt,
                    Term::exact(sigma_label(1, 13), s13.clone()),
                )
                .then("partial sums increase in n", Relation::Le, input.sigma_term());
        } else {
            chain = chain.then("σ_1(13) > 1 by exact computation", Relation::Lt, input.sigma_term());
        }
        let steps = chain
            .then(
                "1/(j²+1) < 1/j²",
                Relation::Lt,
                Term::exact(format!("Σ_{{j≤{n}}} 1/j²"), (*partial).clone()),
            )
            .then("partial sum of ζ(2)", Relation::Le, interval_term("ζ(2)", &enc))
            .then("ζ(2) < 2", Relation::Lt, Term::constant(2))
            .finish();
        Ok((steps, Conclusion::StrictlyBetween1And2))
    }
}

/// `a_2 x^2 + a_0` with `f(j) >= j^2 + 2`: telescoping against `1/((j-1)j)`.
#[derive(Debug, Default)]
pub struct CaseTwoCertifier;

impl CaseCertifier for CaseTwoCertifier {
    fn tag(&self) -> CaseTag {
        CaseTag::CaseTwo
    }

    fn applies(&self, class: &PolyClass, k: usize) -> bool {
        k == 1 && class.tag == ClassTag::CaseTwo
    }

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError> {
        let n = input.n;
        let sum = if n >= 3 {
            telescoping_bound(n, 2)?
        } else {
            (1..=n as i64).map(|j| ratio(1, j * j + 2)).sum()
        };
        let mut chain = ChainBuilder::start(Term::constant(0))
            .then("f(j) > 0", Relation::Lt, input.sigma_term())
            .then(
                "f(j) = a_2 j² + a_0 ≥ j² + 2",
                Relation::Le,
                Term::exact(format!("Σ_{{j≤{n}}} 1/(j²+2)"), sum),
            );
        if n >= 3 {
            chain = chain.then(
                "1/(j²+2) < 1/((j−1)j) for j ≥ 3",
                Relation::Lt,
                Term::exact(format!("1/3 + 1/6 + 1/2 − 1/{n}"), int(1) - ratio(1, n as i64)),
            );
        }
        let steps = chain
            .then("exact comparison", Relation::Lt, Term::constant(1))
            .finish();
        Ok((steps, Conclusion::StrictlyBetween0And1))
    }
}

/// `f(j) >= j^2 + j`: `sigma_1(n) <= 1 - 1/(n+1) < 1`.
#[derive(Debug, Default)]
pub struct CaseThreeCertifier;

impl CaseCertifier for CaseThreeCertifier {
    fn tag(&self) -> CaseTag {
        CaseTag::CaseThree
    }

    fn applies(&self, class: &PolyClass, k: usize) -> bool {
        k == 1 && class.tag == ClassTag::CaseThree
    }

    fn build(&self, input: &CertInput<'_>) -> Result<(Vec<BoundStep>, Conclusion), VerifyError> {
        let n = input.n;
        let sum = telescoping_bound(n, 0)?;
        let pointwise = match (input.f.degree(), input.class.lower_term) {
            (2, _) => "f(j) = a_2 j² + a_1 j + a_0 ≥ j² + j".to_string(),
            (m, Some(l)) => format!("f(j) ≥ j^{m} + j^{l} ≥ j³ + 1 ≥ j² + j"),
            (m, None) => format!("f(j) ≥ j^{m} ≥ j² + j"),
        };
        let closed = int(1) - ratio(1, n as i64 + 1);
        let steps = ChainBuilder::start(Term::constant(0))
            .then("f(j) > 0", Relation::Lt, input.sigma_term())
            .then(pointwise, Relation::Le, Term::exact(format!("Σ_{{j≤{n}}} 1/(j²+j)"), sum))
            .then(
                "telescoping 1/j − 1/(j+1)",
                Relation::Eq,
                Term::exact(format!("1 − 1/{}", n + 1), closed),
            )
            .then("exact comparison", Relation::Lt, Term::constant(1))
            .finish();
        Ok((steps, Conclusion::StrictlyBetween0And1))
    }
}

/// Certifiers tried in registration order; the first that applies wins.
pub struct CertifierRegistry {
    certifiers: Vec<Box<dyn CaseCertifier>>,
}

impl CertifierRegistry {
    pub fn empty() -> Self {
        Self {
            certifiers: Vec::new(),
        }
    }

    pub fn register(&mut self, certifier: Box<dyn CaseCertifier>) {
        self.certifiers.retain(|c| c.tag() != certifier.tag());
        self.certifiers.push(certifier);
    }

    pub fn find(&self, class: &PolyClass, k: usize) -> Option<&dyn CaseCertifier> {
        self.certifiers
            .iter()
            .find(|c| c.applies(class, k))
            .map(|c| c.as_ref())
    }

    pub fn get(&self, tag: CaseTag) -> Option<&dyn CaseCertifier> {
        self.certifiers
            .iter()
            .find(|c| c.tag() == tag)
            .map(|c| c.as_ref())
    }

    pub fn tags(&self) -> Vec<CaseTag> {
        self.certifiers.iter().map(|c| c.tag()).collect()
    }
}

impl Default for CertifierRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(DescentCertifier));
        reg.register(Box::new(LeadGe2Certifier));
        reg.register(Box::new(LeadOneCertifier));
        reg.register(Box::new(CaseOneCertifier));
        reg.register(Box::new(CaseTwoCertifier));
        reg.register(Box::new(CaseThreeCertifier));
        reg
    }
}

impl fmt::Debug for CertifierRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.tags()).finish()
    }
}
