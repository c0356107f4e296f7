use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Mixed-number rendering such as `9 9/49`.
    pub fn to_mixed(&self) -> String {
        if self.is_integer() || self.0.abs() < BigRational::one() {
            return self.to_string();
        }
        let whole = self.0.trunc();
        let frac = (&self.0 - &whole).abs();
        format!("{} {}/{}", whole.to_integer(), frac.numer(), frac.denom())
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
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

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer {:?} in rational {whole:?}", s.trim())))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/q` and the mixed form `a b/c`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty rational".into()));
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        match parts.as_slice() {
            [single] => match single.split_once('/') {
                Some((p, q)) => Rational::from_big(parse_int(p, s)?, parse_int(q, s)?),
                None => Ok(Rational(BigRational::from_integer(parse_int(single, s)?))),
            },
            [whole, frac] => {
                let (p, q) = frac
                    .split_once('/')
                    .ok_or_else(|| Error::Parse(format!("mixed number needs a fraction: {s:?}")))?;
                let w = parse_int(whole, s)?;
                let p = parse_int(p, s)?;
                let q = parse_int(q, s)?;
                if p.is_negative() || !q.is_positive() {
                    return Err(Error::Parse(format!("bad fractional part in {s:?}")));
                }
                let f = Rational::from_big(p, q)?;
                let w = Rational(BigRational::from_integer(w.clone()));
                Ok(if whole.trim_start().starts_with('-') { w - f } else { w + f })
            }
            _ => Err(Error::Parse(format!("unrecognised rational {s:?}"))),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
