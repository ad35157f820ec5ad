use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// There is deliberately no `Div` impl: division is [`QRational::checked_div`],
/// which reports a zero divisor instead of panicking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QRational(BigRational);

impl QRational {
    pub fn zero() -> Self {
        QRational(BigRational::zero())
    }

    pub fn one() -> Self {
        QRational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        QRational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        Self::from_big(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRational(BigRational::new(numer, denom)))
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

    pub fn abs(&self) -> Self {
        QRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &QRational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents of zero are an error.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = BigRational::one();
        let mut sq = base.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(QRational(acc))
    }

    /// `1 - self`, the ubiquitous Pochhammer factor.
    pub fn one_minus(&self) -> Self {
        QRational(BigRational::one() - &self.0)
    }

    /// Largest bit length among numerator and denominator.
    pub fn bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// `num / den`, reporting which quotient vanished.
pub fn ratio(num: &QRational, den: &QRational, what: &str) -> Result<QRational> {
    if den.is_zero() {
        return Err(Error::pole(what));
    }
    num.checked_div(den)
}

impl From<i64> for QRational {
    fn from(n: i64) -> Self {
        QRational::from_int(n)
    }
}

impl From<BigRational> for QRational {
    fn from(r: BigRational) -> Self {
        QRational(r)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: `{s}`"));
        match s.split_once('/') {
            Some((p, r)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let r: BigInt = r.trim().parse().map_err(|_| bad())?;
                QRational::from_big(p, r)
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(QRational(BigRational::from_integer(p)))
            }
        }
    }
}

impl Serialize for QRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<QRational> for QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                QRational(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a QRational> for QRational {
            type Output = QRational;
            fn $method(self, rhs: &'a QRational) -> QRational {
                QRational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<QRational> for &'a QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                QRational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b QRational> for &'a QRational {
            type Output = QRational;
            fn $method(self, rhs: &'b QRational) -> QRational {
                QRational(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl AddAssign<&QRational> for QRational {
    fn add_assign(&mut self, rhs: &QRational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<QRational> for QRational {
    fn add_assign(&mut self, rhs: QRational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&QRational> for QRational {
    fn sub_assign(&mut self, rhs: &QRational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<QRational> for QRational {
    fn sub_assign(&mut self, rhs: QRational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&QRational> for QRational {
    fn mul_assign(&mut self, rhs: &QRational) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign<QRational> for QRational {
    fn mul_assign(&mut self, rhs: QRational) {
        self.0 *= rhs.0;
    }
}

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational(-self.0)
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational(-&self.0)
    }
}

impl Sum for QRational {
    fn sum<I: Iterator<Item = QRational>>(iter: I) -> Self {
        iter.fold(QRational::zero(), |acc, x| acc + x)
    }
}

impl Product for QRational {
    fn product<I: Iterator<Item = QRational>>(iter: I) -> Self {
        iter.fold(QRational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> QRational {
        QRational::new(p, q).unwrap()
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QRational::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(r(1, 2).checked_div(&QRational::zero()), Err(Error::DivisionByZero));
        assert_eq!(QRational::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(QRational::zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        assert_eq!(r(2, 3).pow(3).unwrap(), r(8, 27));
        assert_eq!(r(2, 3).pow(-2).unwrap(), r(9, 4));
        assert_eq!(r(-5, 7).pow(0).unwrap(), QRational::one());
        assert_eq!(QRational::zero().pow(0).unwrap(), QRational::one());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("  -12/8 ".parse::<QRational>().unwrap(), r(-3, 2));
        assert_eq!("7".parse::<QRational>().unwrap(), r(7, 1));
        assert_eq!(r(-3, 2).to_string(), "-3/2");
        assert_eq!(r(4, 2).to_string(), "2");
        assert!("1/0".parse::<QRational>().is_err());
        assert!("x".parse::<QRational>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let s = serde_json::to_string(&r(5, -10)).unwrap();
        assert_eq!(s, "\"-1/2\"");
        let back: QRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r(-1, 2));
    }
}
