//! Exact rational scalars.
//!
//! Scalars are `num_rational::BigRational`, which keeps numerator and
//! denominator coprime with a positive denominator after every operation.
//! This module adds the text format used by matrix documents: an optional
//! minus sign, decimal digits, and an optional `/denominator` with a nonzero
//! leading digit. Decimals and exponents are rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// An arbitrary-precision exact rational number.
pub type Rational = BigRational;

/// Builds the rational `value / 1`.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Builds the rational `num / den`, normalized. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `-?[0-9]+(/[1-9][0-9]*)?` into a normalized rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: text.to_string(),
        reason,
    };
    let body = text.strip_prefix('-').unwrap_or(text);
    let negative = body.len() != text.len();
    let (num_str, den_str) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !all_digits(num_str) {
        return Err(err("numerator must be decimal digits"));
    }
    let mut num: BigInt = num_str.parse().map_err(|_| err("numerator out of range"))?;
    if negative {
        num = -num;
    }
    let den: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if !all_digits(d) || d.starts_with('0') {
                return Err(err(
                    "denominator must be digits with a nonzero leading digit",
                ));
            }
            d.parse().map_err(|_| err("denominator out of range"))?
        }
    };
    Ok(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when the rational is an integer.
pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Returns `value` as an `i64` when it is an integer in range.
pub fn to_i64(value: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(value) {
        value.numer().to_i64()
    } else {
        None
    }
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}
