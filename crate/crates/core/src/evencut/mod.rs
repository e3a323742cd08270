//! Random contraction for even-cut problems.
//!
//! Two variants share the machinery here: the set variant, where a cut
//! `δ(X)` must meet every terminal set evenly, and the dimensional variant,
//! where vertices carry labels in GF(2)^t and the answer is the cogirth of an
//! extended graphic matroid. Both contract uniformly random edges down to
//! `2^t + 4` vertices and finish by exhaustive search.

pub mod dim;
pub mod set;

use thiserror::Error;

use crate::graph::{EdgeId, GraphError, Vertex};

pub use dim::{
    connectivity_reduce, dim_contract, dim_exhaustive, dim_feasible, dim_min_cocycle,
    dim_random_contraction, lift_cocycle, ConnectivityReduction, EvenCutInstance,
};
pub use set::{
    set_contract, set_exhaustive, set_feasible, set_min_even_cut, set_random_contraction,
    SetEvenCutInstance,
};

/// Default cap on `t`; the exhaustive base case enumerates `2^(2^t + 4)` sets.
pub const DEFAULT_T_CAP: u32 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvenCutError {
    #[error("instance is infeasible: no admissible non-empty cut exists")]
    Infeasible,
    #[error("instance graph is not connected")]
    Disconnected,
    #[error("t = {t} exceeds the cap of {cap} on the exhaustive base case")]
    TooLarge { t: u32, cap: u32 },
    #[error("T_{0} has odd cardinality")]
    OddTerminalSet(usize),
    #[error("T_{set} contains vertex {v}, outside the graph")]
    TerminalOutOfRange { set: usize, v: Vertex },
    #[error("tau has {got} entries for {n} vertices")]
    TauLength { got: usize, n: usize },
    #[error("parity {0} does not fit in t bits")]
    ParityWidth(u32),
    #[error("sigma contains unknown edge {0}")]
    UnknownSigmaEdge(EdgeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which pair `(Σ', α')` a dimensional cocycle was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SigmaChoice {
    /// `(Σ, α)`
    Sigma,
    /// `(∅, 0)`
    Empty,
}

/// A cut or cocycle together with the vertex side that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub size: usize,
    /// Sorted edge ids of the witness.
    pub edges: Vec<EdgeId>,
    /// The set `X`, sorted.
    pub side: Vec<Vertex>,
    /// `None` for the set variant.
    pub choice: Option<SigmaChoice>,
}

impl CutResult {
    /// Strict improvement in the order (size, then lexicographic edge ids).
    pub fn better_than(&self, other: &CutResult) -> bool {
        (self.size, &self.edges) < (other.size, &other.edges)
    }
}

/// Tuning for the contraction solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionOptions {
    pub t_cap: u32,
}

impl Default for ContractionOptions {
    fn default() -> Self {
        Self {
            t_cap: DEFAULT_T_CAP,
        }
    }
}

/// Vertex count at or below which the exhaustive base case takes over.
pub fn base_case_size(t: u32) -> usize {
    (1usize << t) + 4
}

/// Smallest `c` with `e^(-24c) <= epsilon`, at least 1.
pub fn c_for_epsilon(epsilon: f64) -> u64 {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    ((1.0 / epsilon).ln() / 24.0).ceil().max(1.0) as u64
}

/// `c * n^4`, the repetition count that drives failure below `e^(-24c)`.
pub fn repetitions(c: u64, n: usize) -> u64 {
    (n as u64).saturating_pow(4).saturating_mul(c)
}

/// Keeps the better of `best` and `candidate`.
pub(crate) fn keep_best(best: &mut Option<CutResult>, candidate: CutResult) {
    if best.as_ref().is_none_or(|b| candidate.better_than(b)) {
        *best = Some(candidate);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_matches_exponent() {
        assert_eq!(c_for_epsilon(0.5), 1);
        assert_eq!(c_for_epsilon((-24.0f64).exp() * 1.01), 1);
        assert_eq!(c_for_epsilon((-48.0f64).exp() * 1.01), 2);
        assert_eq!(repetitions(2, 3), 162);
    }

    #[test]
    fn ordering_breaks_ties_by_ids() {
        let a = CutResult {
            size: 2,
            edges: vec![0, 5],
            side: vec![1],
            choice: None,
        };
        let b = CutResult {
            edges: vec![1, 2],
            ..a.clone()
        };
        assert!(a.better_than(&b));
        assert!(!b.better_than(&a));
        assert!(!a.better_than(&a));
    }
}
