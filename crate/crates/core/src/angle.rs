//! Angles on the circle `R/Z`, measured in turns.
//!
//! An angle is either an exact rational `p/q` or a binary float. Operations
//! between two exact angles stay exact; anything involving a float falls
//! back to floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("cannot parse angle {0:?}")]
    Parse(String),
    #[error("angle denominator must be positive")]
    ZeroDenominator,
    #[error("angle must be finite")]
    NotFinite,
}

#[derive(Debug, Clone, Copy)]
pub enum Angle {
    /// `num / den` with `0 <= num < den`, reduced.
    Exact { num: i128, den: i128 },
    Real(f64),
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Angle {
    pub fn exact(num: i64, den: i64) -> Result<Self, AngleError> {
        if den <= 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Self::reduce(num as i128, den as i128))
    }

    pub fn real(x: f64) -> Result<Self, AngleError> {
        if !x.is_finite() {
            return Err(AngleError::NotFinite);
        }
        Ok(Angle::Real(wrap(x)))
    }

    fn reduce(num: i128, den: i128) -> Self {
        let num = num.rem_euclid(den);
        let g = gcd(num, den).max(1);
        Angle::Exact {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Angle::Exact { num: 0, den: 1 }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact { .. })
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Angle::Exact { num, den } => num as f64 / den as f64,
            Angle::Real(x) => x,
        }
    }

    /// `k * self` modulo one.
    pub fn times(&self, k: u64) -> Self {
        match *self {
            Angle::Exact { num, den } => {
                let k = (k as i128).rem_euclid(den);
                // num, k < den <= 2^63, so the product fits
                Self::reduce(num.checked_mul(k).map_or_else(
                    || mul_mod(num, k, den),
                    |p| p % den,
                ), den)
            }
            Angle::Real(x) => Angle::Real(wrap(x * k as f64)),
        }
    }

    /// `m^s * self` modulo one.
    pub fn times_pow(&self, m: u64, s: u32) -> Self {
        (0..s).fold(*self, |a, _| a.times(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        match (*self, *other) {
            (Angle::Exact { num: a, den: p }, Angle::Exact { num: b, den: q }) => {
                let g = gcd(p, q);
                match (p / g).checked_mul(q) {
                    Some(l) if l < (1i128 << 62) => {
                        Self::reduce(a * (l / p) + b * (l / q), l)
                    }
                    _ => Angle::Real(wrap(self.to_f64() + other.to_f64())),
                }
            }
            _ => Angle::Real(wrap(self.to_f64() + other.to_f64())),
        }
    }

    pub fn neg(&self) -> Self {
        match *self {
            Angle::Exact { num, den } => Self::reduce(-num, den),
            Angle::Real(x) => Angle::Real(wrap(-x)),
        }
    }

    /// Counterclockwise distance from `self` to `to`, in `[0, 1)`.
    pub fn ccw_to(&self, to: &Self) -> Self {
        to.add(&self.neg())
    }

    /// Shortest distance around the circle, in `[0, 1/2]`.
    pub fn circle_distance(&self, other: &Self) -> f64 {
        let d = self.ccw_to(other).to_f64();
        d.min(1.0 - d)
    }

    /// Exact comparison of the representatives in `[0, 1)` when both sides
    /// are exact.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Angle::Exact { num: a, den: p }, Angle::Exact { num: b, den: q }) => {
                (a * q).cmp(&(b * p))
            }
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn same_point(&self, other: &Self) -> bool {
        match (*self, *other) {
            (Angle::Exact { .. }, Angle::Exact { .. }) => self.cmp_value(other) == Ordering::Equal,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

fn mul_mod(a: i128, b: i128, m: i128) -> i128 {
    // double-and-add keeps every intermediate below 2m
    let (mut a, mut b, mut r) = (a % m, b, 0i128);
    while b > 0 {
        if b & 1 == 1 {
            r = (r + a) % m;
        }
        a = (a * 2) % m;
        b >>= 1;
    }
    r
}

/// Reduce a real number into `[0, 1)`.
pub fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::Exact { num: a, den: p }, Angle::Exact { num: b, den: q }) => a == b && p == q,
            (Angle::Real(x), Angle::Real(y)) => x.to_bits() == y.to_bits(),
            _ => false,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Exact { num, den } => write!(f, "{num}/{den}"),
            Angle::Real(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| AngleError::Parse(s.into()))?;
            let q: i64 = q.trim().parse().map_err(|_| AngleError::Parse(s.into()))?;
            return Angle::exact(p, q);
        }
        let x: f64 = s.parse().map_err(|_| AngleError::Parse(s.into()))?;
        Angle::real(x)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Angle::Exact { .. } => serializer.serialize_str(&self.to_string()),
            Angle::Real(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct AngleVisitor;

        impl Visitor<'_> for AngleVisitor {
            type Value = Angle;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a \"p/q\" string")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Angle, E> {
                Angle::real(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Angle, E> {
                Angle::exact(v, 1).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Angle, E> {
                let _ = v;
                Ok(Angle::zero())
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Angle, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(AngleVisitor)
    }
}
