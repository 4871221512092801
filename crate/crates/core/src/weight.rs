use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact nonnegative rational structure constant, always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalarWeight(BigRational);

impl ScalarWeight {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeWeight(value.to_string()));
        }
        Ok(ScalarWeight(value))
    }

    pub fn from_integer(n: u64) -> Self {
        ScalarWeight(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(ScalarWeight(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn zero() -> Self {
        ScalarWeight(BigRational::zero())
    }

    pub fn one() -> Self {
        ScalarWeight(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.0.numer(), self.0.denom())
    }

    pub fn mul(&self, other: &ScalarWeight) -> ScalarWeight {
        ScalarWeight(&self.0 * &other.0)
    }

    pub fn add(&self, other: &ScalarWeight) -> ScalarWeight {
        ScalarWeight(&self.0 + &other.0)
    }
}

impl fmt::Display for ScalarWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl FromStr for ScalarWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScalarWeight::new(parse_rational(s)?)
    }
}

impl Serialize for ScalarWeight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ScalarWeight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// "p" when the denominator is one, "p/q" otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p", "p/q" or a finite decimal such as "0.25", exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    let p = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Base-2 logarithm of a positive big integer, accurate to f64 precision at any size.
pub fn log2_big(x: &BigInt) -> f64 {
    debug_assert!(x.sign() == Sign::Plus);
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

/// num/den as f64 without intermediate overflow; returns 0 or ±inf only when the quotient does.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) { -1.0 } else { 1.0 };
    let n = num.abs();
    let d = den.abs();
    if n.bits() < 1000 && d.bits() < 1000 {
        return sign * n.to_f64().unwrap() / d.to_f64().unwrap();
    }
    let sn = n.bits().saturating_sub(64);
    let sd = d.bits().saturating_sub(64);
    let top_n = (n >> sn).to_f64().unwrap();
    let top_d = (d >> sd).to_f64().unwrap();
    sign * (top_n / top_d) * (sn as f64 - sd as f64).exp2()
}

/// (num/den)·base^(-n) for huge num/den, evaluated in the log domain.
pub fn scaled_ratio(num: &BigInt, den: &BigInt, log2_base: f64, n: u64) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    (log2_big(&num.abs()) - log2_big(&den.abs()) - log2_base * n as f64).exp2()
}

/// Exact rational as f64.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}
