//! Exact rational numbers and probabilities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

pub type Rational = BigRational;

/// Digits used when a probability is rendered without an explicit precision.
pub const DEFAULT_DECIMAL_DIGITS: usize = 6;

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"0.25"` or `"1e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let err = || ParseError::Rational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| err())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let joined = format!("{whole}{frac}");
    let mut value = Rational::from_integer(joined.parse::<BigInt>().map_err(|_| err())?);
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal rendering, rounding half to even.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let negative = r.is_negative();
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = r.abs().numer() * &scale;
    let denom = r.denom();
    let (mut q, rem) = scaled.div_rem(denom);
    let twice = &rem * 2u32;
    if twice > *denom || (twice == *denom && q.is_odd()) {
        q += 1u32;
    }
    let (whole, frac) = q.div_rem(&scale);
    let sign = if negative && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// An exact probability in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(Rational);

impl Probability {
    pub fn new(value: Rational) -> Result<Self, ParseError> {
        if value.is_negative() || value > Rational::one() {
            return Err(ParseError::NotAProbability(format_rational(&value)));
        }
        Ok(Probability(value))
    }

    /// `n/d`, panicking outside `[0, 1]`. Meant for literals.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::new(ratio(n, d)).expect("literal probability out of range")
    }

    pub fn zero() -> Self {
        Probability(Rational::zero())
    }

    pub fn one() -> Self {
        Probability(Rational::one())
    }

    pub fn half() -> Self {
        Self::ratio(1, 2)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }

    /// `1 - p`.
    pub fn complement(&self) -> Self {
        Probability(Rational::one() - &self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.0, digits)
    }

    /// Numerator and denominator as machine integers, when they fit.
    pub fn to_u64_parts(&self) -> Option<(u64, u64)> {
        Some((self.0.numer().to_u64()?, self.0.denom().to_u64()?))
    }

    /// `a / (a + b)` for nonnegative weights, the shape of every Bayes
    /// posterior in this crate.
    pub(crate) fn posterior(a: Rational, b: Rational) -> Result<Self, crate::AnalyticError> {
        let total = &a + &b;
        if total.is_zero() {
            return Err(crate::AnalyticError::UndefinedConditional);
        }
        Ok(Probability(a / total))
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Probability({})", format_rational(&self.0))
    }
}

impl FromStr for Probability {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Probability::new(parse_rational(s)?)
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = deserialize_rational(deserializer)?;
        Probability::new(r).map_err(de::Error::custom)
    }
}

/// Accepts `"p/q"`, decimal strings, and JSON numbers.
pub(crate) fn deserialize_rational<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    struct V;
    impl de::Visitor<'_> for V {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a rational as \"p/q\", a decimal string, or a number")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(BigInt::from(v)))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(Rational::from_integer(BigInt::from(v)))
        }

        // f64's shortest round-trip text is the decimal the user wrote.
        fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
            parse_rational(&format!("{v:e}")).map_err(E::custom)
        }
    }
    d.deserialize_any(V)
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("23").unwrap(), int(23));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "/", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimal_rendering_rounds_half_even() {
        assert_eq!(format_decimal(&ratio(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&ratio(2, 3), 6), "0.666667");
        assert_eq!(format_decimal(&ratio(25, 27), 3), "0.926");
        assert_eq!(format_decimal(&ratio(47, 93), 3), "0.505");
        // exact ties
        assert_eq!(format_decimal(&ratio(1, 8), 2), "0.12");
        assert_eq!(format_decimal(&ratio(3, 8), 2), "0.38");
        assert_eq!(format_decimal(&ratio(5, 2), 0), "2");
        assert_eq!(format_decimal(&int(1), 3), "1.000");
        assert_eq!(format_decimal(&ratio(1, 20), 6), "0.050000");
    }

    #[test]
    fn probability_range_is_enforced() {
        assert!("3/2".parse::<Probability>().is_err());
        assert!("-1/2".parse::<Probability>().is_err());
        assert_eq!("1".parse::<Probability>().unwrap(), Probability::one());
        assert_eq!(Probability::ratio(1, 3).complement(), Probability::ratio(2, 3));
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let p = Probability::ratio(1, 7);
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"1/7\"");
        let q: Probability = serde_json::from_str("0.25").unwrap();
        assert_eq!(q, Probability::ratio(1, 4));
        let r: Probability = serde_json::from_str("\"2/6\"").unwrap();
        assert_eq!(r, Probability::ratio(1, 3));
    }
}
