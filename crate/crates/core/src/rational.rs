//! Exact rational scalars.
//!
//! All decision paths in this crate run over [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an exact literal: an integer (`-7`), a fraction (`-5/12`) or a
/// finite decimal (`0.25`, `-1.5e0` is not accepted). The Unicode minus sign
/// is accepted in place of `-`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let normalized = t.replace('\u{2212}', "-");
    let bad = || ParseRationalError::Invalid(t.to_string());

    if let Some((n, d)) = normalized.split_once('/') {
        let num = parse_integer(n).ok_or_else(bad)?;
        let den = parse_integer(d).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(t.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, fracpart)) = normalized.split_once('.') {
        if fracpart.is_empty() && whole.trim_start_matches(['-', '+']).is_empty() {
            return Err(bad());
        }
        if !fracpart.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let (negative, digits) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if !digits.chars().all(|c| c.is_ascii_digit()) || (digits.is_empty() && fracpart.is_empty()) {
            return Err(bad());
        }
        let all_digits = format!("{}{}", digits, fracpart);
        let mantissa: BigInt =
            if all_digits.is_empty() { BigInt::zero() } else { all_digits.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10u32), fracpart.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(&normalized).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn sign(x: &Rational) -> Ordering {
    x.numer().sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator or denominator overflow.
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = nb - db;
        let scaled = if shift > 0 {
            Rational::new(x.numer().clone(), x.denom() << (shift as usize))
        } else {
            Rational::new(x.numer() << ((-shift) as usize), x.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Least common multiple of all denominators.
pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// The rational with the smallest denominator (then smallest absolute
/// numerator) in the closed interval `[lo, hi]`.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if next <= *hi {
        return next;
    }
    // lo and hi share the integer part: continue on the reciprocals of the
    // fractional parts.
    let lo_f = lo - &fl;
    let hi_f = hi - &fl;
    let inner = simplest_positive(&hi_f.recip(), &lo_f.recip());
    fl + inner.recip()
}

/// Exact decimal rendering with `digits` digits after the point, rounding
/// toward negative infinity (`floor = true`) or positive infinity.
pub fn to_decimal_directed(x: &Rational, digits: usize, floor: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let q = if floor { scaled.floor() } else { scaled.ceil() };
    let q = q.to_integer();
    let negative = q.is_negative();
    let (int_part, frac_part) = q.abs().div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let f = frac_part.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - f.len()));
        out.push_str(&f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_fraction_and_decimal() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-5/12").unwrap(), frac(-5, 12));
        assert_eq!(parse_rational("\u{2212}5/12").unwrap(), frac(-5, 12));
        assert_eq!(parse_rational("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("4/-6").unwrap(), frac(-2, 3));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "abc", "1/0", "1.2.3", "1e5", "--1", "3/", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn huge_operands_reduce() {
        let big: BigInt = num_traits::pow(BigInt::from(10u32), 2000);
        let a = Rational::new(big.clone() + 1u32, big.clone());
        let b = Rational::new(big.clone() - 1u32, big.clone());
        assert_eq!(a + b, int(2));
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_in(&frac(1, 3), &frac(1, 2)), frac(1, 2));
        assert_eq!(simplest_in(&frac(3, 10), &frac(4, 10)), frac(1, 3));
        assert_eq!(simplest_in(&frac(-7, 2), &frac(-3, 1)), int(-3));
        assert_eq!(simplest_in(&frac(-1, 2), &frac(1, 2)), int(0));
        assert_eq!(simplest_in(&frac(141, 100), &frac(1415, 1000)), frac(24, 17));
    }

    #[test]
    fn directed_decimal() {
        assert_eq!(to_decimal_directed(&frac(1, 3), 3, true), "0.333");
        assert_eq!(to_decimal_directed(&frac(1, 3), 3, false), "0.334");
        assert_eq!(to_decimal_directed(&frac(-1, 3), 2, true), "-0.34");
    }
}
