use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact nonnegative permanent (or any other count that may outgrow 64 bits).
///
/// Serializes as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PermanentValue(BigUint);

impl PermanentValue {
    pub fn zero() -> Self {
        PermanentValue(BigUint::zero())
    }

    pub fn one() -> Self {
        PermanentValue(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    /// Natural logarithm; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            let s = self.0.to_string();
            return s.parse::<f64>().map(f64::ln).unwrap_or(f64::INFINITY);
        }
        let shift = bits - 64;
        let top: BigUint = &self.0 >> shift;
        let top = top.to_string().parse::<f64>().unwrap_or(f64::MAX);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }

    /// Value as `u128` when it fits.
    pub fn to_u128(&self) -> Option<u128> {
        let digits = self.0.to_u64_digits();
        match digits.len() {
            0 => Some(0),
            1 => Some(digits[0] as u128),
            2 => Some(digits[0] as u128 | (digits[1] as u128) << 64),
            _ => None,
        }
    }
}

impl From<BigUint> for PermanentValue {
    fn from(v: BigUint) -> Self {
        PermanentValue(v)
    }
}

impl From<u64> for PermanentValue {
    fn from(v: u64) -> Self {
        PermanentValue(BigUint::from(v))
    }
}

impl From<u128> for PermanentValue {
    fn from(v: u128) -> Self {
        PermanentValue(BigUint::from(v))
    }
}

impl From<usize> for PermanentValue {
    fn from(v: usize) -> Self {
        PermanentValue(BigUint::from(v))
    }
}

impl PartialEq<u64> for PermanentValue {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Mul for PermanentValue {
    type Output = PermanentValue;
    fn mul(self, rhs: PermanentValue) -> PermanentValue {
        PermanentValue(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a PermanentValue> for &'a PermanentValue {
    type Output = PermanentValue;
    fn mul(self, rhs: &'a PermanentValue) -> PermanentValue {
        PermanentValue(&self.0 * &rhs.0)
    }
}

impl Add for PermanentValue {
    type Output = PermanentValue;
    fn add(self, rhs: PermanentValue) -> PermanentValue {
        PermanentValue(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a PermanentValue> for &'a PermanentValue {
    type Output = PermanentValue;
    fn add(self, rhs: &'a PermanentValue) -> PermanentValue {
        PermanentValue(&self.0 + &rhs.0)
    }
}

impl std::iter::Product for PermanentValue {
    fn product<I: Iterator<Item = PermanentValue>>(iter: I) -> Self {
        iter.fold(PermanentValue::one(), |a, b| a * b)
    }
}

impl fmt::Display for PermanentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for PermanentValue {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse::<BigUint>().map(PermanentValue)
    }
}

impl Serialize for PermanentValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for PermanentValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> PermanentValue {
    let mut acc = BigUint::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    PermanentValue(acc)
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> PermanentValue {
    if k > n {
        return PermanentValue::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k as u64 {
        acc *= n as u64 - i;
        acc /= i + 1;
    }
    PermanentValue(acc)
}
