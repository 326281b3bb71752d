//! Exact rational exponents.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A positive rational `p/q`, always stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    num: u64,
    den: u64,
}

impl Exponent {
    pub const ONE: Exponent = Exponent { num: 1, den: 1 };

    /// `p/q` reduced. Both parts must be positive.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidExponent(format!("{p}/{q}")));
        }
        let g = gcd(p, q);
        Ok(Exponent { num: p / g, den: q / g })
    }

    /// Exponent of a factor of length `len` with period `period`.
    pub(crate) fn ratio(len: usize, period: usize) -> Self {
        debug_assert!(len > 0 && period > 0);
        let g = gcd(len as u64, period as u64);
        Exponent { num: len as u64 / g, den: period as u64 / g }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// `floor(self * q)`.
    pub fn floor_times(self, q: u64) -> u128 {
        self.num as u128 * q as u128 / self.den as u128
    }

    /// `ceil(self * q)`.
    pub fn ceil_times(self, q: u64) -> u128 {
        (self.num as u128 * q as u128).div_ceil(self.den as u128)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidExponent(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        Exponent::new(p, q).map_err(|_| bad())
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A power-avoidance threshold: `alpha` alone forbids exponents `>= alpha`,
/// `alpha+` forbids only exponents `> alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Threshold {
    pub alpha: Exponent,
    pub plus: bool,
}

impl Threshold {
    pub fn at_least(alpha: Exponent) -> Self {
        Threshold { alpha, plus: false }
    }

    pub fn above(alpha: Exponent) -> Self {
        Threshold { alpha, plus: true }
    }

    pub fn is_violated_by(&self, e: Exponent) -> bool {
        if self.plus {
            e > self.alpha
        } else {
            e >= self.alpha
        }
    }

    /// Shortest factor length with period `q` that violates the threshold.
    pub fn min_violating_len(&self, q: usize) -> u128 {
        if self.plus {
            self.alpha.floor_times(q as u64) + 1
        } else {
            self.alpha.ceil_times(q as u64)
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alpha, if self.plus { "+" } else { "" })
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_suffix('+') {
            Some(rest) => Ok(Threshold::above(rest.parse()?)),
            None => Ok(Threshold::at_least(s.parse()?)),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn reduced_on_construction() {
        assert_eq!(Exponent::new(14, 6).unwrap(), e("7/3"));
        assert_eq!(e("14/6").to_string(), "7/3");
        assert_eq!(e("4"), Exponent::new(4, 1).unwrap());
        assert!(Exponent::new(0, 3).is_err());
        assert!(Exponent::new(3, 0).is_err());
    }

    #[test]
    fn ordering_matches_rational_value() {
        assert!(e("7/3") > e("2/1"));
        assert!(e("2/1") > e("7/4"));
        assert!(e("7/4") > e("3/2"));
        assert_eq!(e("7/3").cmp(&e("14/6")), Ordering::Equal);
        let big = Exponent::new(u64::MAX, u64::MAX - 1).unwrap();
        assert!(big > Exponent::ONE);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "/", "7/", "/3", "a/b", "0/1", "1/0", "-1/2", "7/3/2"] {
            assert!(bad.parse::<Exponent>().is_err(), "{bad}");
        }
    }

    #[test]
    fn thresholds() {
        let t: Threshold = "7/3+".parse().unwrap();
        assert!(t.plus);
        assert_eq!(t.alpha, e("7/3"));
        assert!(!t.is_violated_by(e("7/3")));
        assert!(t.is_violated_by(e("5/2")));
        let t: Threshold = "7/3".parse().unwrap();
        assert!(t.is_violated_by(e("7/3")));
        assert_eq!(t.to_string(), "7/3");
        // period 3: 7/3 needs length 7; 7/3+ needs length 8
        assert_eq!(Threshold::at_least(e("7/3")).min_violating_len(3), 7);
        assert_eq!(Threshold::above(e("7/3")).min_violating_len(3), 8);
        assert_eq!(Threshold::at_least(e("3/2")).min_violating_len(3), 5);
        assert_eq!(Threshold::above(e("3/2")).min_violating_len(3), 5);
    }

    proptest! {
        #[test]
        fn order_agrees_with_cross_multiplication(a in 1u64..10_000, b in 1u64..10_000, c in 1u64..10_000, d in 1u64..10_000) {
            let x = Exponent::new(a, b).unwrap();
            let y = Exponent::new(c, d).unwrap();
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x.to_string().parse::<Exponent>().unwrap(), x);
        }
    }
}
