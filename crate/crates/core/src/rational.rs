//! Exact non-negative rationals: parsing, rendering and serde helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseErrorKind;

pub type Rational = BigRational;

pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `7`, `1.25` or `3/2` into an exact non-negative rational.
///
/// Decimals are read digit by digit, so `0.1` is exactly `1/10`.
pub fn parse_non_negative(text: &str) -> Result<Rational, ParseErrorKind> {
    let value = parse_signed(text)?;
    if value.is_negative() {
        return Err(ParseErrorKind::NegativeNumber(text.to_string()));
    }
    Ok(value)
}

fn parse_signed(text: &str) -> Result<Rational, ParseErrorKind> {
    let malformed = || ParseErrorKind::MalformedNumber(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let value = if let Some((numer, denom)) = body.split_once('/') {
        let numer = parse_digits(numer).ok_or_else(malformed)?;
        let denom = parse_digits(denom).ok_or_else(malformed)?;
        if denom.is_zero() {
            return Err(malformed());
        }
        Rational::new(numer, denom)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return Err(malformed());
        }
        let whole = if whole.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(whole).ok_or_else(malformed)?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac).ok_or_else(malformed)?
        };
        Rational::new(whole * &scale + frac, scale)
    } else {
        Rational::from_integer(parse_digits(body).ok_or_else(malformed)?)
    };
    Ok(if negative { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Lowest-terms rendering: `p/q`, or just `p` for integers.
pub fn render(value: &Rational) -> String {
    value.to_string()
}

pub fn parse_list(text: &str) -> Result<Vec<Rational>, ParseErrorKind> {
    text.split(',')
        .map(|s| parse_non_negative(s.trim()))
        .collect()
}

pub(crate) mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        render(value).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_non_negative(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod vec_as_strings {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(render))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_non_negative(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
