//! Exact rational coordinates.
//!
//! Every begin coordinate in the crate is a [`Coord`]. Arithmetic never
//! rounds: half-open touching (`y(I) == x(J)`) and the floor of coordinate
//! differences used by the slack scan must be decided exactly.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number in canonical form (positive denominator, reduced).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(BigRational);

impl Coord {
    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn one() -> Self {
        Coord(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Coord(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coord(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Largest integer not above `self`, saturated into `i64`.
    pub fn floor_i64(&self) -> i64 {
        let f = self.0.numer().div_floor(self.0.denom());
        f.to_i64()
            .unwrap_or(if f.is_negative() { i64::MIN } else { i64::MAX })
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Nearest coordinate with denominator `den` (used to import floats from the demo page).
    pub fn from_f64_grid(v: f64, den: i64) -> Self {
        Coord::from_ratio((v * den as f64).round() as i64, den)
    }

    pub fn plus_int(&self, v: i64) -> Self {
        // n/d + v = (n + v d)/d is already in lowest terms.
        let d = self.0.denom();
        Coord(BigRational::new_raw(self.0.numer() + d * BigInt::from(v), d.clone()))
    }

    /// Successor endpoint of a unit interval starting here.
    pub fn unit_end(&self) -> Self {
        self.plus_int(1)
    }

    /// Representative of `self` modulo `m` in `[0, m)`.
    pub fn rem_euclid(&self, m: &Coord) -> Self {
        let q = (&self.0 / &m.0).floor();
        Coord(&self.0 - q * &m.0)
    }

    pub fn abs(&self) -> Self {
        Coord(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            return write!(f, "{}", self.0.numer());
        }
        // Exact decimal when the denominator only has factors 2 and 5.
        let den = self.0.denom().clone();
        let mut rest = den.clone();
        let (two, five) = (BigInt::from(2), BigInt::from(5));
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest.is_even() {
            rest /= &two;
            twos += 1;
        }
        while (&rest % &five).is_zero() {
            rest /= &five;
            fives += 1;
        }
        if !rest.is_one() || twos.max(fives) > 18 {
            return write!(f, "{}/{}", self.0.numer(), den);
        }
        let digits = twos.max(fives);
        let scale = BigInt::from(10u64.pow(digits));
        let scaled = self.0.numer() * (&scale / &den);
        let neg = scaled.is_negative();
        let mag = scaled.abs();
        let (int, frac) = mag.div_rem(&scale);
        let frac = format!("{:0>width$}", frac.to_string(), width = digits as usize);
        let frac = frac.trim_end_matches('0');
        write!(f, "{}{}.{}", if neg { "-" } else { "" }, int, frac)
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Coord {
    type Err = Error;

    /// Accepts integers, decimals (`"1.25"`, `"-.5"`) and fractions (`"5/4"`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ParseCoord(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Coord(BigRational::new(p, q)));
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{}{}", int, frac);
        let mag: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(if neg { -mag } else { mag }, den);
        Ok(Coord(v))
    }
}

impl<'a> Add<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn add(self, rhs: &'a Coord) -> Coord {
        Coord(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Coord> for &'a Coord {
    type Output = Coord;
    fn sub(self, rhs: &'a Coord) -> Coord {
        Coord(&self.0 - &rhs.0)
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, rhs: Coord) -> Coord {
        Coord(self.0 + rhs.0)
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, rhs: Coord) -> Coord {
        Coord(self.0 - rhs.0)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

impl<'a> Neg for &'a Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-&self.0)
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::from_int(v)
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Coord {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(c("1.25"), c("5/4"));
        assert_eq!(c("-0.5"), Coord::from_ratio(-1, 2));
        assert_eq!(c(".5"), c("1/2"));
        assert_eq!(c("3"), Coord::from_int(3));
        assert_eq!(c("10/4"), c("5/2"));
        assert_eq!(c("2/-4"), c("-1/2"));
        assert!("".parse::<Coord>().is_err());
        assert!("1/0".parse::<Coord>().is_err());
        assert!("abc".parse::<Coord>().is_err());
        assert!("1.2.3".parse::<Coord>().is_err());
        assert!("-".parse::<Coord>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1.25", "-0.5", "12.345", "1/3", "-7/6", "100"] {
            assert_eq!(c(s).to_string(), s);
            assert_eq!(c(&c(s).to_string()), c(s));
        }
    }

    #[test]
    fn floor_is_exact() {
        assert_eq!(c("0.999").floor_i64(), 0);
        assert_eq!(c("1").floor_i64(), 1);
        assert_eq!(c("-0.001").floor_i64(), -1);
        assert_eq!(c("-1").floor_i64(), -1);
        assert_eq!(c("7/2").floor_i64(), 3);
    }

    #[test]
    fn rem_euclid_wraps_into_range() {
        let m = c("2.5");
        assert_eq!(c("3").rem_euclid(&m), c("0.5"));
        assert_eq!(c("-0.5").rem_euclid(&m), c("2"));
        assert_eq!(c("2.5").rem_euclid(&m), c("0"));
    }
}
