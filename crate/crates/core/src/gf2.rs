//! Linear algebra over GF(2) and binary matroids given by a matrix.
//!
//! Rows are stored as packed 64-bit words. The API only ever exposes logical
//! bits; the packing is an implementation detail.
//!
//! The exhaustive [`girth_oracle`] and [`cogirth_oracle`] are exact but
//! exponential. They certify the randomized solvers on small instances and
//! guard against accidental use on large ones with [`OracleLimits`].

use std::fmt;

use thiserror::Error;

use crate::ext::ExtNat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("labels must be distinct and match the matrix dimension")]
    Labels,
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("an element cannot be both contracted and deleted: {0}")]
    ContractDeleteOverlap(usize),
    #[error("enumeration over 2^{needed} vectors exceeds the guard of 2^{limit}")]
    SizeGuard { needed: usize, limit: usize },
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Characteristic vector of `support` inside `0..len`.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_weight(&self, other: &Gf2Vector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        self.and_weight(other) % 2 == 1
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    /// Copies the listed coordinates, in order, into a new vector.
    pub fn select(&self, indices: &[usize]) -> Gf2Vector {
        Gf2Vector::from_bits(indices.iter().map(|&i| self.get(i)))
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &Gf2Vector) -> Gf2Vector {
        Gf2Vector::from_bits(self.bits().chain(other.bits()))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2) with optional row and column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
    cols: usize,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![Gf2Vector::zeros(cols); rows],
            cols,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::Dimension(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            row_labels: None,
            col_labels: None,
        })
    }

    /// Convenience constructor from 0/1 integers; panics on ragged input.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                Gf2Vector::from_bits(r.iter().map(|&b| b != 0))
            })
            .collect();
        Self::from_rows(cols, rows).expect("checked above")
    }

    pub fn from_columns(rows: usize, columns: &[Gf2Vector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::Dimension(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn with_row_labels(mut self, labels: Vec<String>) -> Result<Self, Gf2Error> {
        check_labels(&labels, self.rows.len())?;
        self.row_labels = Some(labels);
        Ok(self)
    }

    pub fn with_col_labels(mut self, labels: Vec<String>) -> Result<Self, Gf2Error> {
        check_labels(&labels, self.cols)?;
        self.col_labels = Some(labels);
        Ok(self)
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &Gf2Vector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> Gf2Vector {
        Gf2Vector::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn columns(&self) -> Vec<Gf2Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Gf2Vector::is_zero)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.cols, &self.rows).expect("rows share a length")
    }

    /// Keeps the listed columns, in order. Column labels follow.
    pub fn select_columns(&self, cols: &[usize]) -> Gf2Matrix {
        let rows = self.rows.iter().map(|r| r.select(cols)).collect();
        Gf2Matrix {
            rows,
            cols: cols.len(),
            row_labels: self.row_labels.clone(),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| cols.iter().map(|&c| l[c].clone()).collect()),
        }
    }

    /// Keeps the listed rows, in order. Row labels follow.
    pub fn select_rows(&self, rows: &[usize]) -> Gf2Matrix {
        Gf2Matrix {
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
            cols: self.cols,
            row_labels: self
                .row_labels
                .as_ref()
                .map(|l| rows.iter().map(|&r| l[r].clone()).collect()),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != rhs.nrows() {
            return Err(Gf2Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Gf2Vector::zeros(rhs.ncols());
                for k in r.iter_ones() {
                    acc.xor_assign(rhs.row(k));
                }
                acc
            })
            .collect();
        Gf2Matrix::from_rows(rhs.ncols(), rows)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.len(), self.cols, "length mismatch");
        Gf2Vector::from_bits(self.rows.iter().map(|r| r.dot(v)))
    }

    /// Row vector product `v * self`.
    pub fn left_mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.len(), self.nrows(), "length mismatch");
        let mut acc = Gf2Vector::zeros(self.cols);
        for i in v.iter_ones() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    pub fn add(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.nrows() != rhs.nrows() || self.cols != rhs.cols {
            return Err(Gf2Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.nrows(),
                self.cols,
                rhs.nrows(),
                rhs.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&rhs.rows) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    /// Stacks `self` above `below`.
    pub fn vstack(&self, below: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != below.cols {
            return Err(Gf2Error::Dimension("vstack column mismatch".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        Gf2Matrix::from_rows(self.cols, rows)
    }

    /// Places `right` to the right of `self`.
    pub fn hstack(&self, right: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.nrows() != right.nrows() {
            return Err(Gf2Error::Dimension("hstack row mismatch".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&right.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Gf2Matrix::from_rows(self.cols + right.cols, rows)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

fn check_labels(labels: &[String], expected: usize) -> Result<(), Gf2Error> {
    if labels.len() != expected {
        return Err(Gf2Error::Labels);
    }
    let mut sorted: Vec<&String> = labels.iter().collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != labels.len() {
        return Err(Gf2Error::Labels);
    }
    Ok(())
}

/// Reduced row-echelon form and its pivot columns (strictly increasing).
///
/// Zero rows are kept at the bottom so the shape is unchanged.
pub fn row_reduce(m: &Gf2Matrix) -> (Gf2Matrix, Vec<usize>) {
    let mut rows = m.rows.clone();
    let pivots = reduce_in_place(&mut rows, m.cols, 0..m.cols);
    let reduced = Gf2Matrix {
        rows,
        cols: m.cols,
        row_labels: None,
        col_labels: m.col_labels.clone(),
    };
    (reduced, pivots)
}

/// Gauss-Jordan elimination with pivots searched in the given column order.
fn reduce_in_place(
    rows: &mut [Gf2Vector],
    _cols: usize,
    order: impl IntoIterator<Item = usize>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in order {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

pub fn rank(m: &Gf2Matrix) -> usize {
    row_reduce(m).1.len()
}

/// Factors `p = b * c` with inner dimension `rank(p)`.
///
/// `c` is the non-zero part of the reduced row-echelon form and `b` holds
/// the columns of `p` at the pivot positions.
pub fn factor_low_rank(p: &Gf2Matrix) -> (Gf2Matrix, Gf2Matrix) {
    let (reduced, pivots) = row_reduce(p);
    let k = pivots.len();
    let c = Gf2Matrix::from_rows(p.ncols(), reduced.rows[..k].to_vec()).expect("same width");
    let mut b = Gf2Matrix::zeros(p.nrows(), k);
    for (j, &pc) in pivots.iter().enumerate() {
        for i in 0..p.nrows() {
            if p.get(i, pc) {
                b.set(i, j, true);
            }
        }
    }
    (b, c)
}

/// A basis of `{x : m x = 0}`.
pub fn null_space_basis(m: &Gf2Matrix) -> Vec<Gf2Vector> {
    let (reduced, pivots) = row_reduce(m);
    let mut is_pivot = vec![false; m.ncols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.ncols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = Gf2Vector::zeros(m.ncols());
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced.get(r, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Finds `x` with `x * m = target`, if one exists.
pub fn solve_left(m: &Gf2Matrix, target: &Gf2Vector) -> Option<Gf2Vector> {
    let rows = m.nrows();
    // Augment each row with an identity tag so the combination is recovered.
    let tagged: Vec<Gf2Vector> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.concat(&Gf2Vector::from_support(rows, [i])))
        .collect();
    let mut work = tagged;
    let pivots = reduce_in_place(&mut work, m.ncols() + rows, 0..m.ncols());
    let mut residual = target.concat(&Gf2Vector::zeros(rows));
    for (r, &p) in pivots.iter().enumerate() {
        if residual.get(p) {
            residual.xor_assign(&work[r]);
        }
    }
    if (0..m.ncols()).any(|c| residual.get(c)) {
        return None;
    }
    Some(Gf2Vector::from_bits(
        (0..rows).map(|i| residual.get(m.ncols() + i)),
    ))
}

pub fn in_row_space(m: &Gf2Matrix, v: &Gf2Vector) -> bool {
    solve_left(m, v).is_some()
}

/// A binary matroid: a GF(2) matrix plus the labels of its ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidRep {
    matrix: Gf2Matrix,
    ground: Vec<String>,
}

impl MatroidRep {
    pub fn new(matrix: Gf2Matrix, ground: Vec<String>) -> Result<Self, Gf2Error> {
        check_labels(&ground, matrix.ncols())?;
        Ok(Self { matrix, ground })
    }

    /// Uses the matrix's column labels, or `0..cols` when it has none.
    pub fn from_matrix(matrix: Gf2Matrix) -> Self {
        let ground = matrix
            .col_labels()
            .map(<[String]>::to_vec)
            .unwrap_or_else(|| (0..matrix.ncols()).map(|i| i.to_string()).collect());
        Self { matrix, ground }
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == label)
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    /// Whether the columns in `set` (a ground-set indicator) sum to zero.
    pub fn is_cycle(&self, set: &Gf2Vector) -> bool {
        self.matrix.mul_vec(set).is_zero()
    }

    /// Whether `set` is the support of a vector in the row space.
    pub fn is_cocycle(&self, set: &Gf2Vector) -> bool {
        in_row_space(&self.matrix, set)
    }
}

/// A representation of `M / contract \ delete`, elements given by index.
///
/// The contracted columns are eliminated first; rows whose pivot lies in
/// `contract` are dropped together with the contracted and deleted columns.
/// Contracting a loop therefore coincides with deleting it.
pub fn contract_delete(
    m: &MatroidRep,
    contract: &[usize],
    delete: &[usize],
) -> Result<MatroidRep, Gf2Error> {
    let n = m.len();
    let mut removed = vec![false; n];
    for &e in contract.iter().chain(delete) {
        if e >= n {
            return Err(Gf2Error::ElementOutOfRange(e));
        }
    }
    let mut in_contract = vec![false; n];
    for &e in contract {
        in_contract[e] = true;
        removed[e] = true;
    }
    for &e in delete {
        if in_contract[e] {
            return Err(Gf2Error::ContractDeleteOverlap(e));
        }
        removed[e] = true;
    }
    let mut rows = m.matrix.rows.clone();
    let pivots = reduce_in_place(&mut rows, n, contract.iter().copied());
    let kept_cols: Vec<usize> = (0..n).filter(|&c| !removed[c]).collect();
    let kept_rows: Vec<Gf2Vector> = rows[pivots.len()..]
        .iter()
        .map(|r| r.select(&kept_cols))
        .collect();
    let matrix = Gf2Matrix::from_rows(kept_cols.len(), kept_rows)?;
    let ground = kept_cols.iter().map(|&c| m.ground[c].clone()).collect();
    Ok(MatroidRep { matrix, ground })
}

/// Label-based wrapper around [`contract_delete`].
pub fn contract_delete_labels(
    m: &MatroidRep,
    contract: &[&str],
    delete: &[&str],
) -> Result<MatroidRep, Gf2Error> {
    let lookup = |labels: &[&str]| -> Result<Vec<usize>, Gf2Error> {
        labels
            .iter()
            .map(|l| m.index_of(l).ok_or(Gf2Error::ElementOutOfRange(usize::MAX)))
            .collect()
    };
    contract_delete(m, &lookup(contract)?, &lookup(delete)?)
}

/// A representation of the dual matroid, via the standard form `[I | X]`
/// becoming `[X^T | I]`.
pub fn dual(m: &MatroidRep) -> MatroidRep {
    let (reduced, pivots) = row_reduce(&m.matrix);
    let n = m.len();
    let r = pivots.len();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    // Row k of the dual: free column f_k gets 1, pivot column p_i gets X[i][f_k].
    let rows = free
        .iter()
        .map(|&f| {
            let mut v = Gf2Vector::zeros(n);
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate().take(r) {
                if reduced.get(i, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    MatroidRep {
        matrix: Gf2Matrix::from_rows(n, rows).expect("width n"),
        ground: m.ground.clone(),
    }
}

/// Exponent guard for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `k` such that `2^k` vectors may be enumerated. Raising it is
    /// allowed; each extra bit doubles the runtime.
    pub max_bits: usize,
}

pub const DEFAULT_ORACLE_BITS: usize = 24;

/// Null-space dimension up to which the girth oracle enumerates the null
/// space instead of column subsets.
pub const NULL_SPACE_ENUMERATION_BITS: usize = 20;

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_bits: DEFAULT_ORACLE_BITS,
        }
    }
}

/// Minimum weight of a non-zero vector in the span of `basis`, by Gray code.
fn min_weight_in_span(basis: &[Gf2Vector], len: usize) -> ExtNat {
    if basis.is_empty() {
        return ExtNat::INF;
    }
    let mut current = Gf2Vector::zeros(len);
    let mut best = usize::MAX;
    for step in 1u64..(1u64 << basis.len()) {
        let bit = step.trailing_zeros() as usize;
        current.xor_assign(&basis[bit]);
        best = best.min(current.weight());
    }
    ExtNat::finite(best as u64)
}

/// Size of the smallest non-empty cycle, or infinity.
pub fn girth_oracle(m: &MatroidRep) -> Result<ExtNat, Gf2Error> {
    girth_oracle_with(m, OracleLimits::default())
}

pub fn girth_oracle_with(m: &MatroidRep, limits: OracleLimits) -> Result<ExtNat, Gf2Error> {
    let basis = null_space_basis(&m.matrix);
    if basis.len() <= NULL_SPACE_ENUMERATION_BITS.min(limits.max_bits) {
        return Ok(min_weight_in_span(&basis, m.len()));
    }
    if m.len() > limits.max_bits {
        return Err(Gf2Error::SizeGuard {
            needed: m.len(),
            limit: limits.max_bits,
        });
    }
    // Subsets in order of size; the first dependent one is a smallest cycle.
    let columns: Vec<Gf2Vector> = m.matrix.columns();
    for size in 1..=m.len() {
        if let Some(found) = smallest_dependent_subset(&columns, size) {
            return Ok(ExtNat::finite(found as u64));
        }
    }
    Ok(ExtNat::INF)
}

fn smallest_dependent_subset(columns: &[Gf2Vector], size: usize) -> Option<usize> {
    let n = columns.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mut acc = Gf2Vector::zeros(columns[0].len());
        for &i in &idx {
            acc.xor_assign(&columns[i]);
        }
        if acc.is_zero() {
            return Some(size);
        }
        // Next combination in lexicographic order.
        let mut k = size;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if idx[k] < n - size + k {
                idx[k] += 1;
                for j in k + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Size of the smallest non-empty cocycle (support of a non-zero row-space
/// vector), or infinity when the rank is zero.
pub fn cogirth_oracle(m: &MatroidRep) -> Result<ExtNat, Gf2Error> {
    cogirth_oracle_with(m, OracleLimits::default())
}

pub fn cogirth_oracle_with(m: &MatroidRep, limits: OracleLimits) -> Result<ExtNat, Gf2Error> {
    let (reduced, pivots) = row_reduce(&m.matrix);
    if pivots.len() > limits.max_bits {
        return Err(Gf2Error::SizeGuard {
            needed: pivots.len(),
            limit: limits.max_bits,
        });
    }
    Ok(min_weight_in_span(&reduced.rows[..pivots.len()], m.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Gf2Matrix {
        Gf2Matrix::from_u8_rows(&[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Gf2Matrix::identity(3)), 3);
        assert_eq!(
            rank(&Gf2Matrix::from_u8_rows(&[
                &[1, 1, 0],
                &[0, 1, 1],
                &[1, 0, 1]
            ])),
            2
        );
        assert_eq!(rank(&Gf2Matrix::zeros(3, 4)), 0);
    }

    #[test]
    fn row_reduce_examples() {
        let (r, p) = row_reduce(&Gf2Matrix::zeros(2, 3));
        assert!(r.is_zero());
        assert!(p.is_empty());

        let (r, p) = row_reduce(&Gf2Matrix::identity(3));
        assert_eq!(r, Gf2Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = row_reduce(&Gf2Matrix::from_u8_rows(&[&[1, 1], &[1, 1]]));
        assert_eq!(r, Gf2Matrix::from_u8_rows(&[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn factor_examples() {
        let (b, c) = factor_low_rank(&Gf2Matrix::zeros(3, 4));
        assert_eq!((b.nrows(), b.ncols()), (3, 0));
        assert_eq!((c.nrows(), c.ncols()), (0, 4));

        let p = Gf2Matrix::from_u8_rows(&[&[1, 1, 0], &[0, 0, 0], &[1, 1, 0]]);
        let (b, c) = factor_low_rank(&p);
        assert_eq!(b, Gf2Matrix::from_u8_rows(&[&[1], &[0], &[1]]));
        assert_eq!(c, Gf2Matrix::from_u8_rows(&[&[1, 1, 0]]));
        assert_eq!(b.mul(&c).unwrap(), p);
    }

    #[test]
    fn girth_examples() {
        let loop_col = Gf2Matrix::from_u8_rows(&[&[1, 0], &[1, 0]]);
        assert_eq!(
            girth_oracle(&MatroidRep::from_matrix(loop_col)).unwrap(),
            ExtNat::finite(1)
        );
        assert_eq!(
            girth_oracle(&MatroidRep::from_matrix(triangle())).unwrap(),
            ExtNat::finite(3)
        );
        let parallel = Gf2Matrix::from_u8_rows(&[&[1, 1], &[0, 0]]);
        assert_eq!(
            girth_oracle(&MatroidRep::from_matrix(parallel)).unwrap(),
            ExtNat::finite(2)
        );
        assert_eq!(
            girth_oracle(&MatroidRep::from_matrix(Gf2Matrix::identity(4))).unwrap(),
            ExtNat::INF
        );
    }

    #[test]
    fn girth_by_subsets_matches_null_space() {
        // 1 x 30 zero-free row: nullity 29 forces the subset strategy.
        let m = Gf2Matrix::from_rows(30, vec![Gf2Vector::from_support(30, 0..30)]).unwrap();
        let rep = MatroidRep::from_matrix(m);
        let limits = OracleLimits { max_bits: 30 };
        assert_eq!(girth_oracle_with(&rep, limits).unwrap(), ExtNat::finite(2));
        assert!(matches!(
            girth_oracle(&rep),
            Err(Gf2Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn cogirth_examples() {
        assert_eq!(
            cogirth_oracle(&MatroidRep::from_matrix(Gf2Matrix::identity(5))).unwrap(),
            ExtNat::finite(1)
        );
        assert_eq!(
            cogirth_oracle(&MatroidRep::from_matrix(triangle())).unwrap(),
            ExtNat::finite(2)
        );
        assert_eq!(
            cogirth_oracle(&MatroidRep::from_matrix(Gf2Matrix::zeros(3, 3))).unwrap(),
            ExtNat::INF
        );
    }

    #[test]
    fn contract_nothing_is_row_equivalent() {
        let rep = MatroidRep::from_matrix(triangle());
        let c = contract_delete(&rep, &[], &[]).unwrap();
        assert_eq!(c.ground(), rep.ground());
        assert_eq!(rank(&c.matrix().vstack(rep.matrix()).unwrap()), rep.rank());
    }

    #[test]
    fn contracting_a_loop_deletes_it() {
        let m = Gf2Matrix::from_u8_rows(&[&[1, 0, 1], &[0, 0, 1]]);
        let rep = MatroidRep::from_matrix(m);
        let contracted = contract_delete(&rep, &[1], &[]).unwrap();
        let deleted = contract_delete(&rep, &[], &[1]).unwrap();
        assert_eq!(contracted, deleted);
    }

    #[test]
    fn contract_delete_rejects_overlap() {
        let rep = MatroidRep::from_matrix(triangle());
        assert_eq!(
            contract_delete(&rep, &[0], &[0]),
            Err(Gf2Error::ContractDeleteOverlap(0))
        );
        assert_eq!(
            contract_delete(&rep, &[7], &[]),
            Err(Gf2Error::ElementOutOfRange(7))
        );
    }

    #[test]
    fn solve_left_finds_combination() {
        let m = triangle();
        let target = m.row(0).clone().concat(&Gf2Vector::zeros(0));
        let mut t2 = target.clone();
        t2.xor_assign(m.row(2));
        let x = solve_left(&m, &t2).unwrap();
        assert_eq!(m.left_mul_vec(&x), t2);
        assert!(solve_left(&m, &Gf2Vector::from_support(3, [0])).is_none());
    }

    #[test]
    fn labels_must_be_distinct() {
        let m = Gf2Matrix::identity(2);
        assert!(m
            .clone()
            .with_col_labels(vec!["a".into(), "a".into()])
            .is_err());
        assert!(m.with_col_labels(vec!["a".into()]).is_err());
    }
}
