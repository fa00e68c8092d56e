//! Exact rational scalars and the extended parameter line `Q ∪ {∞}`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Panics on `den == 0`; use [`parse_rational`] for
    /// fallible construction from text.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
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

    /// Integer value if the denominator is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    /// Integer value if it fits in an `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| i64::try_from(n).ok())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    /// Integer power, with negative exponents inverting. Panics on `0^(-k)`.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Rat::one();
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Rat::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

/// Parses an optionally signed integer or fraction, e.g. `-4`, `3/6`, `5/7`.
///
/// The result is reduced, so parsing round-trips through [`Rat::to_string`]
/// on canonical forms.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let t = text.trim();
    let (num_text, den_text) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num = parse_int(num_text, text, true)?;
    let den = match den_text {
        Some(d) => parse_int(d, text, false)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(Rat(BigRational::new(num, den)))
}

fn parse_int(text: &str, whole: &str, allow_sign: bool) -> Result<BigInt> {
    let t = text.trim();
    let digits = t
        .strip_prefix(['+', '-'])
        .filter(|_| allow_sign)
        .unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedNumber(whole.to_string()));
    }
    BigInt::from_str(t).map_err(|_| Error::MalformedNumber(whole.to_string()))
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// A point of the projective parameter line: a rational number or `∞`.
///
/// Infinity is a separate variant, never a stand-in rational; the algebras
/// at `λ = ∞` replace their `n(n+1)λ` weight terms by `n²`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Lambda {
    Finite(Rat),
    Infinity,
}

impl Lambda {
    pub fn int(n: i64) -> Self {
        Lambda::Finite(Rat::int(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Lambda::Finite(q) if q.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Lambda::Infinity)
    }

    /// The weight contribution `n(n+1)λ`, read as `n²` at infinity.
    pub fn weight_term(&self, n: i64) -> Rat {
        match self {
            Lambda::Finite(q) => Rat::int(n * (n + 1)) * q,
            Lambda::Infinity => Rat::int(n * n),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(q) => write!(f, "{q}"),
            Lambda::Infinity => write!(f, "inf"),
        }
    }
}

/// Parses a rational literal or `inf`/`∞`.
pub fn parse_lambda(text: &str) -> Result<Lambda> {
    match text.trim() {
        "inf" | "∞" => Ok(Lambda::Infinity),
        t => parse_rational(t).map(Lambda::Finite),
    }
}

impl FromStr for Lambda {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_lambda(s)
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_lambda(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_rational("3/6").unwrap(), Rat::new(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), Rat::int(-4));
        assert_eq!(parse_rational("  5/7 ").unwrap(), Rat::new(5, 7));
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert_eq!(
            parse_rational("5/0"),
            Err(Error::ZeroDenominator("5/0".into()))
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x", "1/2/3", "1.5", "--3", "3/-2", "/4"] {
            assert!(
                matches!(parse_rational(bad), Err(Error::MalformedNumber(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn lambda_forms() {
        assert_eq!(parse_lambda("inf").unwrap(), Lambda::Infinity);
        assert_eq!(parse_lambda("∞").unwrap(), Lambda::Infinity);
        assert_eq!(parse_lambda("-1").unwrap(), Lambda::int(-1));
        assert_eq!(parse_lambda("5/7").unwrap(), Lambda::Finite(Rat::new(5, 7)));
        assert!(parse_lambda("infx").is_err());
    }

    #[test]
    fn weight_term_at_infinity() {
        assert_eq!(Lambda::Infinity.weight_term(3), Rat::int(9));
        assert_eq!(Lambda::int(2).weight_term(3), Rat::int(24));
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let q = Rat::new(2, 3);
        assert_eq!(q.pow(3), Rat::new(8, 27));
        assert_eq!(q.pow(-2), Rat::new(9, 4));
        assert_eq!(q.pow(0), Rat::one());
    }

    fn rat_strategy() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..20).prop_map(|(n, d)| Rat::new(n, d))
    }

    proptest! {
        #[test]
        fn add_is_associative(a in rat_strategy(), b in rat_strategy(), c in rat_strategy()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn mul_distributes(a in rat_strategy(), b in rat_strategy(), c in rat_strategy()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn parse_format_roundtrip(a in rat_strategy()) {
            prop_assert_eq!(parse_rational(&a.to_string()).unwrap(), a);
        }
    }
}
