//! Exact rational arithmetic used for every combinatorial threshold.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Reduced fraction with a positive denominator.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty number")]
    Empty,
    #[error("cannot parse `{0}` as a real number")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Largest integer not exceeding `r`.
pub fn floor(r: &Rational) -> i64 {
    r.numer().div_floor(r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, integers and plain decimals (`"-0.25"`) exactly.
/// Scientific notation is rejected here; callers fall back to floats.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let invalid = || ScalarParseError::Invalid(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| invalid())?;
        let den: i64 = den.trim().parse().map_err(|_| invalid())?;
        if den == 0 {
            return Err(ScalarParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.bytes().all(|c| c.is_ascii_digit()) || !frac_part.bytes().all(|c| c.is_ascii_digit()) {
        return Err(invalid());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i64 = digits.trim_start_matches('0').parse().or_else(|_| {
        if digits.bytes().all(|c| c == b'0') {
            Ok(0)
        } else {
            Err(invalid())
        }
    })?;
    let denom = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(invalid)?;
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// A real-valued parameter that remembers whether it is known exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

#[allow(clippy::should_implement_trait)]
impl Scalar {
    pub fn from_integer(v: i64) -> Self {
        Scalar::Exact(Rational::from_integer(v))
    }

    /// Uses the shortest round-trip decimal of `x`, so `0.1` becomes `1/10`.
    pub fn from_f64(x: f64) -> Self {
        if !x.is_finite() {
            return Scalar::Float(x);
        }
        match parse_rational(&format!("{x}")) {
            Ok(r) => Scalar::Exact(r),
            Err(_) => Scalar::Float(x),
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Scalar::Exact(r) => to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            Scalar::Exact(r) => Some(*r),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value().is_finite()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Exact(r) => r.numer().signum() as i32,
            Scalar::Float(x) if *x > 0.0 => 1,
            Scalar::Float(x) if *x < 0.0 => -1,
            Scalar::Float(_) => 0,
        }
    }

    fn combine(
        self,
        other: Scalar,
        exact: impl Fn(&Rational, &Rational) -> Option<Rational>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        if let (Scalar::Exact(x), Scalar::Exact(y)) = (self, other) {
            if let Some(r) = exact(&x, &y) {
                return Scalar::Exact(r);
            }
        }
        Scalar::Float(float(self.value(), other.value()))
    }

    pub fn add(self, other: Scalar) -> Scalar {
        self.combine(other, |x, y| x.checked_add(y), |x, y| x + y)
    }

    pub fn sub(self, other: Scalar) -> Scalar {
        self.combine(other, |x, y| x.checked_sub(y), |x, y| x - y)
    }

    pub fn mul(self, other: Scalar) -> Scalar {
        self.combine(other, |x, y| x.checked_mul(y), |x, y| x * y)
    }

    pub fn div(self, other: Scalar) -> Scalar {
        self.combine(other, |x, y| x.checked_div(y), |x, y| x / y)
    }

    /// Exact three-way comparison when both sides are exact.
    pub fn cmp_exact(&self, other: &Scalar) -> Option<std::cmp::Ordering> {
        Some(self.exact()?.cmp(&other.exact()?))
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_rational(s) {
            Ok(r) => Ok(Scalar::Exact(r)),
            Err(ScalarParseError::Invalid(_)) => {
                s.trim().parse::<f64>().map(Scalar::Float).map_err(|_| ScalarParseError::Invalid(s.to_string()))
            }
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Serialized as a JSON number when it is an integer-valued or float
/// scalar, otherwise as the string `"p/q"`.
impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) if r.is_integer() => serializer.serialize_i64(*r.numer()),
            Scalar::Exact(r) => {
                let x = to_f64(r);
                if Scalar::from_f64(x) == Scalar::Exact(*r) {
                    serializer.serialize_f64(x)
                } else {
                    serializer.serialize_str(&r.to_string())
                }
            }
            Scalar::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Scalar::from_integer(v)),
            Raw::Num(x) => Ok(Scalar::from_f64(x)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
