//! Rational scalars and their string form.
//!
//! Scalars are `num_rational::BigRational`, which already keeps every value in
//! lowest terms with a positive denominator. The helpers here cover the
//! conversions used throughout the crate and the `"p/q"` text format used in
//! JSON.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num/den`, reduced.
///
/// Panics if `den` is zero; use [`parse`] for untrusted input.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p"` or `"p/q"`; surrounding whitespace is ignored.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Representative of `x` modulo `m` in `[0, m)`.
pub fn modulo(x: &Rational, m: &Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Converts to `i64` when the value is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if !x.denom().is_one() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "1/2", "-7/4", "12/5"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(format(&parse("4/8").unwrap()), "1/2");
        assert_eq!(format(&parse("3/-6").unwrap()), "-1/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn modulo_lands_in_range() {
        assert_eq!(modulo(&frac(-1, 2), &int(1)), frac(1, 2));
        assert_eq!(modulo(&frac(7, 2), &int(2)), frac(3, 2));
        assert_eq!(modulo(&int(4), &int(2)), int(0));
    }
}
