//! Vectors of GF(2)^t packed into a machine word.
//!
//! Edge parities, vertex labels and demands all live in GF(2)^t for small t.
//! Coordinate `i` (0-based) is bit `i`; the textual form lists coordinate 0
//! first.

use std::fmt;
use std::ops::{Add, AddAssign};

/// Largest dimension a [`Parity`] can hold.
pub const MAX_PARITY_DIM: u32 = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Parity(pub u32);

impl Parity {
    pub const ZERO: Parity = Parity(0);

    pub fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    pub fn with_bit(self, i: u32, value: bool) -> Parity {
        if value {
            Parity(self.0 | (1 << i))
        } else {
            Parity(self.0 & !(1 << i))
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// All vectors of GF(2)^t in increasing numeric order.
    pub fn all(t: u32) -> impl Iterator<Item = Parity> {
        (0..1u32 << t).map(Parity)
    }

    /// Renders the first `t` coordinates as a `0`/`1` string.
    pub fn to_bits(self, t: u32) -> String {
        (0..t)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Parses a `0`/`1` string; returns the vector and its dimension.
    pub fn parse_bits(s: &str) -> Option<(Parity, u32)> {
        let t = u32::try_from(s.len()).ok()?;
        if t > MAX_PARITY_DIM {
            return None;
        }
        let mut p = Parity::ZERO;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => p = p.with_bit(i as u32, true),
                _ => return None,
            }
        }
        Some((p, t))
    }
}

// Addition in GF(2)^t is bitwise xor.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Self {
        iter.fold(Parity::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_round_trip() {
        let (p, t) = Parity::parse_bits("101").unwrap();
        assert_eq!(t, 3);
        assert_eq!(p, Parity(0b101));
        assert_eq!(p.to_bits(3), "101");
        assert_eq!(Parity::parse_bits("").unwrap(), (Parity::ZERO, 0));
        assert!(Parity::parse_bits("012").is_none());
    }

    #[test]
    fn addition_is_xor() {
        assert_eq!(Parity(0b01) + Parity(0b11), Parity(0b10));
        assert_eq!(Parity::all(2).sum::<Parity>(), Parity::ZERO);
    }
}
