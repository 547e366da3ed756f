//! Exact rational helpers.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::Error;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or `"p"` with `q > 0`.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den <= BigInt::zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders as `"p/q"`, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Nearest rational with denominator `denom`; `None` for non-finite input.
pub fn from_f64_rounded(x: f64, denom: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let scaled = num_traits::Float::round(x * denom as f64);
    let numer = BigInt::from(scaled.to_i128()?);
    Some(Rational::new(numer, BigInt::from(denom)))
}
