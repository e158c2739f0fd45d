//! Exact rational numbers.
//!
//! All probabilities, utilities and thresholds in this crate are
//! arbitrary-precision rationals. Values render as `"num/den"`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `base^exp` for a possibly negative exponent.
pub fn pow(base: i64, exp: i32) -> Rational {
    let b = int(base);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b, (-exp) as usize).recip()
    }
}

/// Renders in the canonical `num/den` form (integers keep `/1`).
pub fn format(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `n`, `-n`, `n/d`; whitespace around tokens is ignored.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(zero(), |acc, v| acc + v)
}
