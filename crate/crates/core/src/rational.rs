//! Exact rational arithmetic; every weight and utility is a [`Rational`].
//!
//! Backed by `num_rational::BigRational`, which keeps the fraction reduced
//! with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_usize(value: usize) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::parse("number", format!("`{text}` is not a rational literal"));
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::parse("number", format!("`{text}` has a zero denominator")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::from_integer(whole.abs()) + Rational::new(frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let value: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(value))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Integers become JSON numbers when they fit in an `i64`; everything else a `"p/q"` string.
pub fn to_json(value: &Rational) -> Value {
    if value.is_integer() {
        if let Ok(small) = i64::try_from(value.to_integer()) {
            return Value::from(small);
        }
    }
    Value::String(format_rational(value))
}

pub fn from_json(value: &Value, field: &str) -> Result<Rational> {
    match value {
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(int(i))
            } else if let Some(u) = num.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                // Non-integer JSON numbers go through their decimal text so no binary rounding leaks in.
                parse_rational(&num.to_string()).map_err(|_| {
                    Error::parse(field, format!("`{num}` is not an exact rational literal"))
                })
            }
        }
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(field, message),
            other => other,
        }),
        other => Err(Error::parse(
            field,
            format!("expected an integer or a \"p/q\" string, found {other}"),
        )),
    }
}

pub fn floor(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("9/18").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn stored_in_lowest_terms() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&int(25)), "25");
    }

    #[test]
    fn json_roundtrip_prefers_integers() {
        assert_eq!(to_json(&int(3)), Value::from(3));
        assert_eq!(to_json(&ratio(11, 10)), Value::from("11/10"));
        assert_eq!(from_json(&Value::from(2.5), "x").unwrap(), ratio(5, 2));
        assert!(from_json(&Value::Bool(true), "x").is_err());
    }

    proptest! {
        #[test]
        fn order_matches_cross_multiplication(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let lhs = ratio(a, b);
            let rhs = ratio(c, d);
            prop_assert_eq!(lhs.cmp(&rhs), (a * d).cmp(&(c * b)));
            prop_assert_eq!(parse_rational(&format_rational(&lhs)).unwrap(), lhs);
        }
    }
}
