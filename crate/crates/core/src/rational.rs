//! Exact rational scalars and their text form.
//!
//! Every interface of this crate that reads or writes numbers does so through
//! the functions here, so the accepted grammar lives in one place:
//! `"3/2"`, `"-7"`, `"0.25"`, `"2.5e-3"` all denote exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseRationalError {
    #[error("empty numeric literal")]
    Empty,
    #[error("malformed numeric literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"a/b"`, integer, or decimal (optionally with exponent) notation.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseRationalError::Malformed(text.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseRationalError::Malformed(text.to_string()))?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s).ok_or_else(|| ParseRationalError::Malformed(text.to_string()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp_part) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], Some(&s[pos + 1..])),
        None => (s, None),
    };
    let exponent: i32 = match exp_part {
        Some(e) if e.is_empty() => return None,
        Some(e) => e.parse().ok()?,
        None => 0,
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().ok()?
    };
    numer *= sign;
    let mut denom = BigInt::one();
    let scale = frac_part.len() as i32 - exponent;
    let ten = BigInt::from(10);
    if scale >= 0 {
        denom = ten.pow(scale as u32);
    } else {
        numer *= ten.pow((-scale) as u32);
    }
    Some(Rational::new(numer, denom))
}

/// Renders `num/den`; integers drop the denominator. Inverse of [`parse_rational`].
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Nearest rational on the `1/grid_denominator` grid; used to pin float
/// iterates to exact coordinates before exact recomputation.
pub fn quantize(x: f64, grid_denominator: &BigInt) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let denom = Rational::from_integer(grid_denominator.clone());
    let scaled = x * to_f64(&denom);
    if !scaled.is_finite() {
        return None;
    }
    let numer = BigRational::from_float(scaled.round())?.to_integer();
    Some(Rational::new(numer, grid_denominator.clone()))
}

/// floor(sqrt(x)) for x ≥ 0, exact.
pub fn floor_sqrt(x: &Rational) -> BigInt {
    assert!(!x.is_negative(), "floor_sqrt of negative rational");
    // floor(sqrt(n/d)) = floor(isqrt(n*d) / d)
    let prod = x.numer() * x.denom();
    let root = prod.sqrt();
    root / x.denom()
}

/// Smallest integer k with k² ≥ x (x ≥ 0), exact.
pub fn ceil_sqrt(x: &Rational) -> BigInt {
    let lo = floor_sqrt(x);
    if Rational::from_integer(lo.clone() * lo.clone()) >= *x {
        lo
    } else {
        lo + 1
    }
}
