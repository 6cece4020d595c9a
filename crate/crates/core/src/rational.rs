//! Exact rational numbers used as the codomain of every function.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    /// Builds `numerator / denominator`, normalized.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        if self.0.is_positive() {
            Ordering::Greater
        } else if self.0.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Exact value of a decimal or integer literal; `p/q` fractions are also
    /// accepted. Leading `+`/`-` is allowed.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let text = text.trim();
        let fail = |pos: usize, msg: &str| Error::parse(pos, format!("{msg} in number {text:?}"));
        let (negative, body, offset) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..], 1),
            Some(b'+') => (false, &text[1..], 1),
            _ => (false, text, 0),
        };
        if body.is_empty() {
            return Err(fail(offset, "missing digits"));
        }
        let digits = |s: &str, at: usize| -> Result<BigInt> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail(at, "expected digits"));
            }
            Ok(s.parse::<BigInt>().expect("validated digits"))
        };
        let value = if let Some((num, den)) = body.split_once('/') {
            let n = digits(num, offset)?;
            let d = digits(den, offset + num.len() + 1)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            BigRational::new(n, d)
        } else if let Some((int, frac)) = body.split_once('.') {
            let i = digits(int, offset)?;
            let f = digits(frac, offset + int.len() + 1)?;
            let scale = num_traits::pow(BigInt::from(10u32), frac.len());
            BigRational::new(i * &scale + f, scale)
        } else {
            BigRational::from_integer(digits(body, offset)?)
        };
        Ok(Rational(if negative { -value } else { value }))
    }

    /// Converts a float through its shortest round-trip decimal rendering, so
    /// `0.1` becomes exactly `1/10`.
    pub fn from_f64_decimal(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite value {value}")));
        }
        let rendered = format!("{value}");
        if rendered.contains('e') || rendered.contains('E') {
            let exact = BigRational::from_float(value)
                .ok_or_else(|| Error::InvalidArgument(format!("cannot convert {value}")))?;
            return Ok(Rational(exact));
        }
        Rational::parse_literal(&rendered)
    }

    pub fn min_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rational::parse_literal(s)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value as i64)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

// Serialized as a string ("3", "-1/2") to keep values exact.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a string (\"p/q\", integer, decimal) or a JSON number")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                Rational::parse_literal(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
                Rational::from_f64_decimal(v).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn literals_parse_exactly() {
        assert_eq!(r("3"), Rational::from_integer(3));
        assert_eq!(r("-2/4"), Rational::new(-1, 2).unwrap());
        assert_eq!(r("0.125"), Rational::new(1, 8).unwrap());
        assert_eq!(r("-1.5"), Rational::new(-3, 2).unwrap());
        assert_eq!(r("+7"), Rational::from_integer(7));
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for bad in ["", "-", "1/", "/2", "1.", ".5", "1/0", "x", "1.2.3", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display_uses_lowest_terms() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-10/5").to_string(), "-2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn floats_convert_through_decimal_rendering() {
        assert_eq!(Rational::from_f64_decimal(0.1).unwrap(), r("1/10"));
        assert_eq!(Rational::from_f64_decimal(-2.5).unwrap(), r("-5/2"));
        assert!(Rational::from_f64_decimal(f64::NAN).is_err());
    }

    #[test]
    fn serde_accepts_strings_and_numbers() {
        let v: Vec<Rational> = serde_json::from_str(r#"["1/3", 2, 0.25, "-4"]"#).unwrap();
        assert_eq!(v, vec![r("1/3"), r("2"), r("1/4"), r("-4")]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/3","2","1/4","-4"]"#);
    }

    #[test]
    fn ordering_and_sign() {
        assert!(r("-1/2") < r("0"));
        assert_eq!(r("-1/2").sign(), Ordering::Less);
        assert_eq!(r("0").sign(), Ordering::Equal);
        assert_eq!((r("1/2") - r("3/4")).abs(), r("1/4"));
    }
}
