//! Exact rationals.
//!
//! [`Rat`] is a reduced fraction with positive denominator; zero is `0/1`.
//! Text form is `p/q`, or `p` when the denominator is one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p`, `p/q`. Decimal points and exponents are rejected so that
/// every accepted constant is exactly rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::parse(None, format!("malformed rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if is_int(d) && !d.starts_with(['-', '+']) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::parse(None, format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat("-2").unwrap(), rat(-2));
        assert_eq!(format_rat(&parse_rat("0/7").unwrap()), "0");
        assert_eq!(format_rat(&ratio(-1, 3)), "-1/3");
    }

    #[test]
    fn rejects_non_rational_text() {
        for s in ["1.5", "1e3", "", "/2", "3/", "3/-2", "3/0", "x"] {
            assert!(parse_rat(s).is_err(), "{s}");
        }
    }
}
