//! Exact rational scalars.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator, so structural equality is field
//! equality. Division is only available through fallible methods.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `numer / denom` in lowest terms.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        Self::from_bigints(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Approximate value, for diagnostics and numeric root seeding only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
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

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidScalar(s.to_string());
        match t.split_once('/') {
            None => parse_int(t).map(Rational::from_bigint).ok_or_else(bad),
            Some((n, d)) => {
                let n = parse_int(n.trim()).ok_or_else(bad)?;
                let d = d.trim();
                if d.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let d = parse_int(d).ok_or_else(bad)?;
                Rational::from_bigints(n, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rational::from_integer(n)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(&self.0, rhs.0))
            }
        }
        impl $assign_tr<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                $assign_tr::$assign_method(&mut self.0, &rhs.0);
            }
        }
        impl $assign_tr<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                $assign_tr::$assign_method(&mut self.0, rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Parses a comma-separated list such as `"1, -2/3, 5"`.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn addition_of_fractions() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
    }

    #[test]
    fn inverse_of_negative() {
        assert_eq!(r(-3, 7).inv().unwrap(), r(-7, 3));
    }

    #[test]
    fn normalizes_on_construction() {
        let x = r(2, 4);
        assert_eq!(x.to_string(), "1/2");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        assert_eq!(r(0, -5), Rational::zero());
        assert_eq!(r(0, -5).denom(), &BigInt::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(r(1, 2).checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!("3/0".parse::<Rational>(), Err(Error::DivisionByZero));
    }

    #[test]
    fn textual_form() {
        assert_eq!(Rational::from_integer(5).to_string(), "5");
        assert_eq!(r(-3, 4).to_string(), "-3/4");
        assert_eq!("-3/4".parse::<Rational>().unwrap(), r(-3, 4));
        assert_eq!(" +6/8 ".parse::<Rational>().unwrap(), r(3, 4));
        for bad in ["", "x", "1/", "/2", "1/-2", "1.5", "--1", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn json_accepts_strings_and_integers() {
        let v: Vec<Rational> = serde_json::from_str(r#"["1/2", 3, "-4"]"#).unwrap();
        assert_eq!(v, vec![r(1, 2), r(3, 1), r(-4, 1)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","3","-4"]"#);
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("1, 2,-3/2").unwrap(), vec![r(1, 1), r(2, 1), r(-3, 2)]);
        assert!(parse_list("").unwrap().is_empty());
        assert!(parse_list("1,,2").is_err());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Rational::one());
                prop_assert_eq!(b.checked_div(&a).unwrap() * &a, b.clone());
            }
        }

        #[test]
        fn render_parse_round_trip(a in rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
