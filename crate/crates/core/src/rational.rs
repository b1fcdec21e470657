//! Exact rationals and their textual forms.
//!
//! Values are `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. This module adds the `"num/den"` string form
//! used in every serialized artifact and a display-only decimal rendering.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Error returned when a `"num/den"` string cannot be read back.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Renders `p` when the denominator is one and `p/q` otherwise.
pub fn to_fraction_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_fraction(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| err())?;
    let den: BigInt = den.trim().parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Decimal approximation with `digits` significant digits, rounded half to
/// even. Computed by integer long division, never through floating point.
/// Plain notation is used for moderate magnitudes, `d.ddde±x` otherwise.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= |r| < 10^(e+1)
    let mut exp: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    loop {
        let (lo_num, lo_den) = scaled(&BigInt::one(), &BigInt::one(), exp, &ten);
        if (&num * &lo_den).cmp(&(&lo_num * &den)) == Ordering::Less {
            exp -= 1;
            continue;
        }
        let (hi_num, hi_den) = scaled(&BigInt::one(), &BigInt::one(), exp + 1, &ten);
        if (&num * &hi_den).cmp(&(&hi_num * &den)) != Ordering::Less {
            exp += 1;
            continue;
        }
        break;
    }

    // mantissa = round(|r| * 10^(digits-1-exp)) as an integer
    let shift = digits as i64 - 1 - exp;
    let (n, d) = scaled(&num, &den, shift, &ten);
    let (q, rem) = n.div_rem(&d);
    let twice: BigInt = &rem * 2u32;
    let mut mantissa = match twice.cmp(&d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    };
    if mantissa == ten.pow(digits as u32) {
        mantissa /= &ten;
        exp += 1;
    }

    let mut text = mantissa.to_string();
    debug_assert_eq!(text.len(), digits);
    let sign = if r.is_negative() { "-" } else { "" };
    if (-6..digits as i64).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            let frac = text.split_off(int_len);
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                format!("{sign}{text}")
            } else {
                format!("{sign}{text}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            let frac = text.trim_end_matches('0');
            format!("{sign}0.{zeros}{frac}")
        }
    } else {
        let rest = text.split_off(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{text}e{exp}")
        } else {
            format!("{sign}{text}.{rest}e{exp}")
        }
    }
}

fn scaled(num: &BigInt, den: &BigInt, shift: i64, ten: &BigInt) -> (BigInt, BigInt) {
    if shift >= 0 {
        (num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), den * ten.pow((-shift) as u32))
    }
}

/// Wrapper whose `Display` is the `"num/den"` form.
pub struct Fraction<'a>(pub &'a Rational);

impl fmt::Display for Fraction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_fraction_string(self.0))
    }
}

/// `#[serde(with = "crate::rational::serde_fraction")]` for `Rational` fields.
pub mod serde_fraction {
    use super::{parse_fraction, to_fraction_string, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_fraction(&text).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&ratio(6, 4)), "3/2");
        assert_eq!(to_fraction_string(&ratio(-4, 2)), "-2");
        assert_eq!(to_fraction_string(&ratio(1, -2)), "-1/2");
        assert_eq!(parse_fraction("-10/4").unwrap(), ratio(-5, 2));
        assert_eq!(parse_fraction("7").unwrap(), int(7));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x/2").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&ratio(1, 4), 12), "0.25");
        assert_eq!(to_decimal(&int(1), 12), "1");
        assert_eq!(to_decimal(&ratio(-11, 6), 12), "-1.83333333333");
        assert_eq!(to_decimal(&ratio(1, 1000), 12), "0.001");
        assert_eq!(to_decimal(&ratio(1, 10_000_000), 3), "1e-7");
        assert_eq!(to_decimal(&int(123_456), 3), "1.23e5");
        // 9.995 -> 3 significant digits rolls over
        assert_eq!(to_decimal(&ratio(19_999, 2000), 3), "10");
    }

    #[test]
    fn decimal_rounds_half_even() {
        // 0.125 and 0.375 at two significant digits
        assert_eq!(to_decimal(&ratio(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&ratio(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&ratio(5, 2), 1), "2");
        assert_eq!(to_decimal(&ratio(7, 2), 1), "4");
    }
}
