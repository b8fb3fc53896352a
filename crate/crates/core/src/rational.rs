//! Exact rational numbers used for every probability value in the crate.
//!
//! All arithmetic is performed on arbitrary-precision rationals kept in
//! lowest terms with a positive denominator, so every axiom check in the
//! crate is a decidable equality rather than a tolerance comparison.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses "num/den" or a bare integer "num" into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| RationalParseError::Malformed(text.to_string()))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| RationalParseError::Malformed(text.to_string()))?;
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as "num/den", or bare "num" when the reduced
/// denominator is 1 (never as a decimal).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shorthand constructor used pervasively in tests.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}
