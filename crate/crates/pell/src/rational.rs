//! Exact parsing of decimal and fraction strings into rationals.
//!
//! Counting is discontinuous at integer radii, so lambda must never pass
//! through a binary float: "4.999999999999" has to stay strictly below 5.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecimalParseError {
    #[error("empty input")]
    Empty,
    #[error("invalid character at byte {0}")]
    InvalidCharacter(usize),
    #[error("no digits")]
    NoDigits,
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Parses `"123"`, `"-4.75"`, `".5"`, `"5."`, or `"p/q"` into an exact
/// rational. No exponents, whitespace, or grouping separators.
pub fn parse_decimal(s: &str) -> Result<BigRational, DecimalParseError> {
    if s.is_empty() {
        return Err(DecimalParseError::Empty);
    }
    if let Some(pos) = s.find('/') {
        let num = parse_sign_and_digits(&s[..pos], 0)?;
        let den = parse_digits(&s[pos + 1..], pos + 1)?;
        if den.is_zero() {
            return Err(DecimalParseError::ZeroDenominator);
        }
        return Ok(BigRational::new(num, BigInt::from(den)));
    }
    let bytes = s.as_bytes();
    let (negative, start) = match bytes[0] {
        b'+' => (false, 1),
        b'-' => (true, 1),
        _ => (false, 0),
    };
    let mut mantissa = BigUint::zero();
    let mut digit_count = 0usize;
    let mut frac_digits: Option<u32> = None;
    for (i, &byte) in bytes.iter().enumerate().skip(start) {
        match byte {
            b'0'..=b'9' => {
                mantissa = mantissa * 10u32 + u32::from(byte - b'0');
                digit_count += 1;
                if let Some(k) = frac_digits.as_mut() {
                    *k += 1;
                }
            }
            b'.' if frac_digits.is_none() => frac_digits = Some(0),
            _ => return Err(DecimalParseError::InvalidCharacter(i)),
        }
    }
    if digit_count == 0 {
        return Err(DecimalParseError::NoDigits);
    }
    let mut num = BigInt::from(mantissa);
    if negative {
        num = -num;
    }
    let den = BigInt::from(10u32).pow(frac_digits.unwrap_or(0));
    Ok(BigRational::new(num, den))
}

fn parse_sign_and_digits(s: &str, offset: usize) -> Result<BigInt, DecimalParseError> {
    if s.is_empty() {
        return Err(DecimalParseError::NoDigits);
    }
    let (negative, start) = match s.as_bytes()[0] {
        b'+' => (false, 1),
        b'-' => (true, 1),
        _ => (false, 0),
    };
    let mag = parse_digits(&s[start..], offset + start)?;
    let mag = BigInt::from(mag);
    Ok(if negative { -mag } else { mag })
}

fn parse_digits(s: &str, offset: usize) -> Result<BigUint, DecimalParseError> {
    if s.is_empty() {
        return Err(DecimalParseError::NoDigits);
    }
    let mut value = BigUint::zero();
    for (i, &byte) in s.as_bytes().iter().enumerate() {
        match byte {
            b'0'..=b'9' => value = value * 10u32 + u32::from(byte - b'0'),
            _ => return Err(DecimalParseError::InvalidCharacter(offset + i)),
        }
    }
    Ok(value)
}
