//! Exact parsing and printing of rational strings.
//!
//! Accepted inputs: `"p/q"` fractions, plain integers, and decimal strings.
//! Decimals are converted exactly (`"0.3"` becomes 3/10), never through
//! binary floating point. Output is always in lowest terms with a positive
//! denominator, printed without the denominator when it is 1.

use lovasz::BigRational;
use num_bigint::BigInt;
use num_traits::Zero;

fn parse_digits(s: &str, context: &str) -> Result<BigInt, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid {context} {s:?}: expected decimal digits"));
    }
    Ok(s.parse().expect("digits parse as an integer"))
}

/// Parses `"p/q"`, an integer, or a decimal string into an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational, String> {
    let trimmed = input.trim();
    let (negative, body) = match trimmed.as_bytes().first() {
        Some(b'-') => (true, &trimmed[1..]),
        Some(b'+') => (false, &trimmed[1..]),
        _ => (false, trimmed),
    };
    let magnitude = if let Some((numer, denom)) = body.split_once('/') {
        let numer = parse_digits(numer, "numerator")?;
        let denom = parse_digits(denom, "denominator")?;
        if denom.is_zero() {
            return Err(format!("invalid rational {input:?}: denominator is zero"));
        }
        BigRational::new(numer, denom)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return Err(format!("invalid rational {input:?}"));
        }
        let whole = if whole.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(whole, "integer part")?
        };
        let frac_digits = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac, "fractional part")?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        BigRational::new(whole * &scale + frac_digits, scale)
    } else {
        BigRational::from_integer(parse_digits(body, "integer")?)
    };
    Ok(if negative { -magnitude } else { magnitude })
}

/// Lowest-terms rendering; integers print without a denominator.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}
