//! Natural numbers extended with an infinite element.
//!
//! Girths, walk lengths, join sizes and matching weights are all "a natural
//! number, or infinity when no object exists".

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

/// A natural number or `Infinite`. Ordered with every finite value below
/// `Infinite`; addition saturates to `Infinite`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    #[default]
    Infinite,
}

impl ExtNat {
    pub const INF: ExtNat = ExtNat::Infinite;
    pub const ZERO: ExtNat = ExtNat::Finite(0);

    pub fn finite(value: u64) -> Self {
        ExtNat::Finite(value)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn value(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Finite(v)
    }
}

impl From<Option<u64>> for ExtNat {
    fn from(v: Option<u64>) -> Self {
        v.map_or(ExtNat::Infinite, ExtNat::Finite)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.checked_add(b).into(),
            _ => ExtNat::Infinite,
        }
    }
}

impl Add<u64> for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: u64) -> ExtNat {
        self + ExtNat::Finite(rhs)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            Ok(ExtNat::Infinite)
        } else {
            s.parse().map(ExtNat::Finite)
        }
    }
}

impl std::iter::Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> Self {
        iter.fold(ExtNat::ZERO, |a, b| a + b)
    }
}
