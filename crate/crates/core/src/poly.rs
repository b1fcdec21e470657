//! Dense integer polynomials in one variable `x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Exponents above this are rejected by the parser; the dense form would
/// allocate one coefficient per degree.
pub const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("the zero polynomial is not allowed")]
    ZeroPolynomial,
    #[error("exponent {exponent} at position {pos} exceeds the limit of {MAX_EXPONENT}")]
    ExponentTooLarge { pos: usize, exponent: String },
}

/// `a_0 + a_1 x + ... + a_m x^m` with `a_m != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients, constant term first. Trailing
    /// zeros are trimmed; an all-zero input is rejected.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self, PolyError> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^m`
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("non-empty by construction")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at(&self, x: u64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Smallest `i` in `1..=n_max` with `f(i) = 0`.
    pub fn first_zero_at_positive_arg(&self, n_max: u64) -> Option<u64> {
        (1..=n_max).find(|&i| self.eval_at(i).is_zero())
    }

    pub fn classify(&self) -> PolyClass {
        classify(self)
    }

    /// Canonical text, e.g. `3x^4 + 2x + 7` or `-x^2 + 3`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            if exp == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match exp {
                0 => {}
                1 => out.push('x'),
                _ => {
                    out.push_str("x^");
                    out.push_str(&exp.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_poly(&text).map_err(de::Error::custom)
    }
}

/// Parses `c`, `x`, `x^e`, `c*x^e`, `cx^e` terms joined by `+`/`-`, with an
/// optional leading sign. Whitespace is ignored; positions in errors are
/// byte offsets into `text`.
pub fn parse_poly(text: &str) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut coeffs: Vec<BigInt> = Vec::new();

    p.skip_ws();
    if p.at_end() {
        return Err(p.syntax("empty expression"));
    }
    let mut negative = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            true
        }
        Some(b'+') => {
            p.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (coeff, exp) = p.term()?;
        let idx = exp as usize;
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, BigInt::zero());
        }
        if negative {
            coeffs[idx] -= coeff;
        } else {
            coeffs[idx] += coeff;
        }
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(p.syntax("expected '+' or '-'")),
        }
        p.pos += 1;
    }
    Polynomial::new(coeffs)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some((start, s))
    }

    /// One unsigned term; returns (coefficient, exponent).
    fn term(&mut self) -> Result<(BigInt, u64), PolyError> {
        let coeff = self
            .digits()
            .map(|(_, d)| d.parse::<BigInt>().expect("ascii digits"));
        self.skip_ws();
        let mut star = false;
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            star = true;
        }
        if self.peek() != Some(b'x') {
            return match coeff {
                Some(c) if !star => Ok((c, 0)),
                _ => Err(self.syntax("expected a coefficient or 'x'")),
            };
        }
        self.pos += 1;
        self.skip_ws();
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            let Some((start, d)) = self.digits() else {
                return Err(self.syntax("expected an exponent after '^'"));
            };
            match d.parse::<u64>() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => {
                    return Err(PolyError::ExponentTooLarge {
                        pos: start,
                        exponent: d.to_string(),
                    })
                }
            }
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(BigInt::one), exp))
    }
}

/// Which branch of the non-integrality case analysis a polynomial falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    /// `a x^m`, `m >= 2`, `a >= 2`
    MonomialLeadGe2,
    /// `x^m`, `m >= 2`
    MonomialLeadOne,
    /// `x^2 + 1`
    CaseOne,
    /// `a_2 x^2 + a_0` other than `x^2 + 1`
    CaseTwo,
    /// degree 2 with `a_1 >= 1`, or degree at least 3, with two or more terms
    CaseThree,
    /// nonnegative coefficients, degree 1
    LinearNonconstant,
    Constant,
    HasNegativeCoeff,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::MonomialLeadGe2 => "MonomialLeadGe2",
            ClassTag::MonomialLeadOne => "MonomialLeadOne",
            ClassTag::CaseOne => "CaseOne",
            ClassTag::CaseTwo => "CaseTwo",
            ClassTag::CaseThree => "CaseThree",
            ClassTag::LinearNonconstant => "LinearNonconstant",
            ClassTag::Constant => "Constant",
            ClassTag::HasNegativeCoeff => "HasNegativeCoeff",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyClass {
    pub tag: ClassTag,
    /// For `CaseThree`: index `l < m` of a nonzero lower coefficient.
    pub lower_term: Option<usize>,
}

impl PolyClass {
    fn plain(tag: ClassTag) -> Self {
        Self {
            tag,
            lower_term: None,
        }
    }
}

/// Negative coefficients first, then degree 0/1, then monomials, then the
/// three multi-term cases.
pub fn classify(f: &Polynomial) -> PolyClass {
    if f.has_negative_coeff() {
        return PolyClass::plain(ClassTag::HasNegativeCoeff);
    }
    let m = f.degree();
    match m {
        0 => return PolyClass::plain(ClassTag::Constant),
        1 => return PolyClass::plain(ClassTag::LinearNonconstant),
        _ => {}
    }
    if f.term_count() == 1 {
        return if f.leading().is_one() {
            PolyClass::plain(ClassTag::MonomialLeadOne)
        } else {
            PolyClass::plain(ClassTag::MonomialLeadGe2)
        };
    }
    let c = f.coeffs();
    if m == 2 && c[1].is_zero() {
        if c[0].is_one() && c[2].is_one() {
            return PolyClass::plain(ClassTag::CaseOne);
        }
        return PolyClass::plain(ClassTag::CaseTwo);
    }
    let lower = c[..m].iter().position(|a| !a.is_zero());
    PolyClass {
        tag: ClassTag::CaseThree,
        lower_term: lower,
    }
}
