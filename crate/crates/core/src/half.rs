//! Exact half-integer exponents.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A number in `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `(self + other) / 2`, if it is again a half-integer.
    pub fn midpoint(self, other: HalfInt) -> Option<HalfInt> {
        let s = self.0 + other.0;
        (s % 2 == 0).then_some(HalfInt(s / 2))
    }

    /// The integer `self - other`, if it is one.
    pub fn int_diff(self, other: HalfInt) -> Option<i64> {
        let d = self.0 - other.0;
        (d % 2 == 0).then_some(d / 2)
    }

    /// `self + n` for an integer step `n`.
    pub fn step(self, n: i64) -> HalfInt {
        HalfInt(self.0 + 2 * n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `n`, `-n`, `n/2` and `-n/2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("not a half-integer: {s:?}"),
        };
        let (num, twice) = match t.strip_suffix("/2") {
            Some(n) => (n, false),
            None => (t, true),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: i64 = num.parse().map_err(|_| bad())?;
        Ok(if twice { HalfInt(2 * n) } else { HalfInt(n) })
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HalfInt {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

/// Shorthand for `HalfInt::from_twice`, mostly for tests: `h(3)` is 3/2.
pub const fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["1/2", "-3/2", "2", "0", "-1"] {
            assert_eq!(s.parse::<HalfInt>().unwrap().to_string(), s);
        }
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
        assert!("--1".parse::<HalfInt>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(h(1) + h(1), HalfInt::ONE);
        assert_eq!(h(5).midpoint(h(1)), Some(h(3)));
        assert_eq!(h(1).midpoint(HalfInt::ONE), None);
        assert_eq!(h(5).int_diff(h(1)), Some(2));
        assert_eq!(h(1).int_diff(HalfInt::ZERO), None);
        assert!(-h(3) < h(1));
    }
}
