//! Skew-symmetric matrices over the group ring, and two independent
//! Pfaffian references: expansion over pairings and, for integer matrices,
//! the square root relation with a fraction-free determinant.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::ring::GroupRingPoly;

/// Largest order accepted by [`pfaffian_naive`].
pub const NAIVE_MAX_N: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SkewError {
    #[error("index {0} outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("diagonal entries of a skew matrix are zero")]
    Diagonal,
    #[error("entry has ring dimension {0}, matrix has {1}")]
    RingDimension(u32, u32),
    #[error("order {0} exceeds the naive expansion guard of {NAIVE_MAX_N}")]
    TooLarge(usize),
    #[error("not a perfect matching of 1..={0}")]
    NotMatching(usize),
}

/// An `n x n` skew-symmetric matrix with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRingMatrix {
    n: usize,
    t: u32,
    entries: Vec<GroupRingPoly>,
}

impl SkewRingMatrix {
    pub fn zero(n: usize, t: u32) -> Self {
        Self {
            n,
            t,
            entries: vec![GroupRingPoly::zero(t); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingPoly {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Sets `(i, j)` to `p` and `(j, i)` to `-p`.
    pub fn set(&mut self, i: usize, j: usize, p: GroupRingPoly) -> Result<(), SkewError> {
        for x in [i, j] {
            if x == 0 || x > self.n {
                return Err(SkewError::OutOfRange(x, self.n));
            }
        }
        if i == j {
            if p.is_zero() {
                return Ok(());
            }
            return Err(SkewError::Diagonal);
        }
        if p.t() != self.t {
            return Err(SkewError::RingDimension(p.t(), self.t));
        }
        self.entries[(j - 1) * self.n + (i - 1)] = -&p;
        self.entries[(i - 1) * self.n + (j - 1)] = p;
        Ok(())
    }

    /// Adds `p` to `(i, j)` and `-p` to `(j, i)`.
    pub fn add_to(&mut self, i: usize, j: usize, p: &GroupRingPoly) -> Result<(), SkewError> {
        let sum = self
            .get(i, j)
            .try_add(p)
            .map_err(|_| SkewError::RingDimension(p.t(), self.t))?;
        self.set(i, j, sum)
    }

    /// Integer matrix from a `t = 0` matrix of constants; `None` otherwise.
    pub fn as_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        let mut out = vec![vec![BigInt::zero(); self.n]; self.n];
        for i in 1..=self.n {
            for j in 1..=self.n {
                let p = self.get(i, j);
                if p.terms().any(|(b, d, _)| d != 0 || !b.is_zero()) {
                    return None;
                }
                out[i - 1][j - 1] = p.coefficient(Default::default(), 0);
            }
        }
        Some(out)
    }

    /// Largest sum of absolute coefficients over the entries, at least 1.
    pub fn max_entry_l1(&self) -> BigInt {
        self.entries
            .iter()
            .map(GroupRingPoly::l1_norm)
            .max()
            .unwrap_or_default()
            .max(BigInt::one())
    }

    pub fn max_entry_degree(&self) -> u64 {
        self.entries
            .iter()
            .map(GroupRingPoly::max_degree)
            .max()
            .unwrap_or(0)
    }
}

/// `(-1)^c` where `c` counts crossing pairs `u1 < v1 < u2 < v2`.
pub fn sign_of_matching(pairs: &[(usize, usize)], n: usize) -> Result<i8, SkewError> {
    let mut seen = vec![false; n + 1];
    let mut norm = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        for x in [a, b] {
            if x == 0 || x > n || seen[x] {
                return Err(SkewError::NotMatching(n));
            }
            seen[x] = true;
        }
        if a == b {
            return Err(SkewError::NotMatching(n));
        }
        norm.push((a.min(b), a.max(b)));
    }
    if 2 * pairs.len() != n {
        return Err(SkewError::NotMatching(n));
    }
    let mut crossings = 0;
    for (i, &(u1, v1)) in norm.iter().enumerate() {
        for &(u2, v2) in &norm[i + 1..] {
            if (u1 < u2 && u2 < v1 && v1 < v2) || (u2 < u1 && u1 < v2 && v2 < v1) {
                crossings += 1;
            }
        }
    }
    Ok(if crossings % 2 == 0 { 1 } else { -1 })
}

/// All perfect pairings of `1..=n` (each listed with the smaller end first).
pub fn perfect_pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rest: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = rest.remove(0);
        for i in 0..rest.len() {
            let b = rest.remove(i);
            cur.push((a, b));
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, b);
        }
        rest.insert(0, a);
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// Sum over perfect pairings of sign times the product of the entries
/// `(u, v)`, `u < v`. Zero for odd `n`.
pub fn pfaffian_naive(d: &SkewRingMatrix) -> Result<GroupRingPoly, SkewError> {
    if d.n() > NAIVE_MAX_N {
        return Err(SkewError::TooLarge(d.n()));
    }
    let mut total = GroupRingPoly::zero(d.t());
    for pairing in perfect_pairings(d.n()) {
        let sign = sign_of_matching(&pairing, d.n())?;
        let mut prod = GroupRingPoly::constant(d.t(), sign);
        for &(u, v) in &pairing {
            prod = &prod * d.get(u, v);
            if prod.is_zero() {
                break;
            }
        }
        total = &total + &prod;
    }
    Ok(total)
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
