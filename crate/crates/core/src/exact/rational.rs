//! Arbitrary-precision rationals.
//!
//! Backed by `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};

pub type Rational = num_rational::BigRational;

impl Ring for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Field for Rational {
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!Zero::is_zero(rhs), "division by zero rational");
        self / rhs
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-1/2"`, `"+4/6"` (reduced to `2/3`). Whitespace around
/// the sign or the slash is not accepted.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    let value = match body.split_once('/') {
        Some((n, d)) => {
            if !digits(n) || !digits(d) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rational::new(n.parse().ok()?, d)
        }
        None => {
            if !digits(body) {
                return None;
            }
            Rational::from_integer(body.parse().ok()?)
        }
    };
    Some(if neg { -value } else { value })
}

/// Lowest-terms text form: `"0"`, `"-3"`, `"5/2"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("+7"), Some(int(7)));
        assert_eq!(parse_rational("0"), Some(int(0)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = rat(0, 5);
        assert!(z.denom().is_one());
        assert_eq!(format_rational(&z), "0");
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }
}
