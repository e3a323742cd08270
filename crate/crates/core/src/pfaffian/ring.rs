//! The ring `Z[y_1..y_t, z] / (y_i^2 - 1)`.
//!
//! A monomial is `y^β z^d` with `β ∈ GF(2)^t`, so products add `β` by XOR
//! and degrees by addition. Coefficients are arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::parity::Parity;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("ring dimension mismatch: t = {0} and t = {1}")]
    DimensionMismatch(u32, u32),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingPoly {
    t: u32,
    /// Non-zero coefficients keyed by `(β, z-degree)`.
    terms: BTreeMap<(Parity, u64), BigInt>,
}

impl GroupRingPoly {
    pub fn zero(t: u32) -> Self {
        Self {
            t,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(t: u32) -> Self {
        Self::monomial(t, BigInt::one(), Parity::ZERO, 0)
    }

    /// `coef · y^beta · z^deg`.
    pub fn monomial(t: u32, coef: BigInt, beta: Parity, deg: u64) -> Self {
        let mut p = Self::zero(t);
        p.add_term(beta, deg, coef);
        p
    }

    pub fn constant(t: u32, coef: impl Into<BigInt>) -> Self {
        Self::monomial(t, coef.into(), Parity::ZERO, 0)
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coef · y^beta z^deg` in place.
    pub fn add_term(&mut self, beta: Parity, deg: u64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry((beta, deg)).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&(beta, deg));
        }
    }

    pub fn coefficient(&self, beta: Parity, deg: u64) -> BigInt {
        self.terms.get(&(beta, deg)).cloned().unwrap_or_default()
    }

    /// Terms in increasing `(β, degree)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Parity, u64, &BigInt)> {
        self.terms.iter().map(|(&(b, d), c)| (b, d, c))
    }

    /// Smallest `z`-degree among the terms of class `beta`, if any.
    pub fn mindeg_z(&self, beta: Parity) -> Option<u64> {
        self.terms
            .range((beta, 0)..=(beta, u64::MAX))
            .next()
            .map(|(&(_, d), _)| d)
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.keys().map(|&(_, d)| d).max().unwrap_or(0)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Sum of absolute coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(b, d), c) in &other.terms {
            out.add_term(b, d, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let mut out = Self::zero(self.t);
        for (&(b1, d1), c1) in &self.terms {
            for (&(b2, d2), c2) in &other.terms {
                out.add_term(b1 + b2, d1 + d2, c1 * c2);
            }
        }
        Ok(out)
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if self.t != other.t {
            return Err(RingError::DimensionMismatch(self.t, other.t));
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Terms as `coef:β:deg`, space separated; `0` for the zero polynomial.
impl fmt::Display for GroupRingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(b, d), c) in &self.terms {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}:{}:{d}", b.to_bits(self.t))?;
        }
        Ok(())
    }
}

impl Add for &GroupRingPoly {
    type Output = GroupRingPoly;

    fn add(self, rhs: &GroupRingPoly) -> GroupRingPoly {
        self.try_add(rhs).expect("ring dimensions agree")
    }
}

impl Sub for &GroupRingPoly {
    type Output = GroupRingPoly;

    fn sub(self, rhs: &GroupRingPoly) -> GroupRingPoly {
        self.try_add(&-rhs).expect("ring dimensions agree")
    }
}

impl Mul for &GroupRingPoly {
    type Output = GroupRingPoly;

    fn mul(self, rhs: &GroupRingPoly) -> GroupRingPoly {
        self.try_mul(rhs).expect("ring dimensions agree")
    }
}

impl Neg for &GroupRingPoly {
    type Output = GroupRingPoly;

    fn neg(self) -> GroupRingPoly {
        GroupRingPoly {
            t: self.t,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(t: u32, i: u32) -> GroupRingPoly {
        GroupRingPoly::monomial(t, BigInt::one(), Parity::ZERO.with_bit(i, true), 0)
    }

    #[test]
    fn y_squared_is_one() {
        assert_eq!(&y(1, 0) * &y(1, 0), GroupRingPoly::one(1));
    }

    #[test]
    fn exponents_combine() {
        let a = GroupRingPoly::monomial(2, BigInt::one(), Parity(0b01), 1);
        let b = GroupRingPoly::monomial(2, BigInt::one(), Parity(0b10), 2);
        assert_eq!(
            &a * &b,
            GroupRingPoly::monomial(2, BigInt::one(), Parity(0b11), 3)
        );
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = &y(2, 1) + &GroupRingPoly::constant(2, 7);
        assert!((&a + &-&a).is_zero());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        assert_eq!(
            GroupRingPoly::one(1).try_add(&GroupRingPoly::one(2)),
            Err(RingError::DimensionMismatch(1, 2))
        );
    }

    #[test]
    fn mindeg_and_display() {
        let mut p = GroupRingPoly::zero(1);
        p.add_term(Parity(1), 4, BigInt::from(3));
        p.add_term(Parity(1), 2, BigInt::from(-5));
        p.add_term(Parity(0), 1, BigInt::from(1));
        assert_eq!(p.mindeg_z(Parity(1)), Some(2));
        assert_eq!(p.mindeg_z(Parity(0)), Some(1));
        assert_eq!(p.to_string(), "1:0:1 -5:1:2 3:1:4");
        assert_eq!(GroupRingPoly::zero(0).to_string(), "0");
    }
}
