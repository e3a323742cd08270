//! Minimum-weight perfect matching with a parity demand, by evaluating the
//! Tutte matrix over the group ring at a random point.
//!
//! Edge `e` contributes `x_e · y^γ(e) · z^w(e)` to its Tutte entry. After
//! substituting random integers for the `x_e`, the lowest `z`-degree of the
//! `y^α` coefficient of the Pfaffian is the optimum unless the random point
//! hits a root, which only raises the answer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use thiserror::Error;

use super::dag::pfaffian_dag;
use super::ring::GroupRingPoly;
use super::skew::SkewRingMatrix;
use crate::ext::ExtNat;
use crate::graph::{EdgeId, EdgeLabeling, GraphError, MultiGraph};
use crate::parity::{Parity, MAX_PARITY_DIM};
use crate::seed::{derive_seed, rng_from_seed};

/// Default confidence parameter: each run fails with probability at most
/// `1 / (2c)`.
pub const DEFAULT_CONFIDENCE: u64 = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("t = {0} exceeds the supported parity dimension")]
    TooLarge(u32),
    #[error("parity {0} does not fit in t bits")]
    ParityWidth(u32),
    #[error("confidence must be positive")]
    ZeroConfidence,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingInstance {
    pub graph: MultiGraph,
    pub t: u32,
    pub weight: EdgeLabeling<u64>,
    pub gamma: EdgeLabeling<Parity>,
    pub alpha: Parity,
}

impl MatchingInstance {
    pub fn new(
        graph: MultiGraph,
        t: u32,
        weight: EdgeLabeling<u64>,
        gamma: EdgeLabeling<Parity>,
        alpha: Parity,
    ) -> Result<Self, MatchingError> {
        if t > MAX_PARITY_DIM {
            return Err(MatchingError::TooLarge(t));
        }
        let limit = (1u32 << t) - 1;
        if let Some(p) = gamma
            .iter()
            .map(|(_, p)| *p)
            .chain([alpha])
            .find(|p| p.0 > limit)
        {
            return Err(MatchingError::ParityWidth(p.0));
        }
        let weight = EdgeLabeling::new(&graph, weight.iter().map(|(k, v)| (k, *v)).collect())?;
        let gamma = EdgeLabeling::new(&graph, gamma.iter().map(|(k, v)| (k, *v)).collect())?;
        Ok(Self {
            graph,
            t,
            weight,
            gamma,
            alpha,
        })
    }
}

/// Keeps one minimum-weight edge (smallest id on ties) per vertex pair and
/// parity class, and drops loops.
pub fn dedupe_parallel(inst: &MatchingInstance) -> MatchingInstance {
    let mut keep: BTreeMap<(usize, usize, Parity), (u64, EdgeId)> = BTreeMap::new();
    for e in inst.graph.edges().iter().filter(|e| !e.is_loop()) {
        let key = (e.u.min(e.v), e.u.max(e.v), *inst.gamma.get(e.id));
        let cand = (*inst.weight.get(e.id), e.id);
        keep.entry(key)
            .and_modify(|cur| *cur = (*cur).min(cand))
            .or_insert(cand);
    }
    let kept: std::collections::BTreeSet<EdgeId> = keep.values().map(|&(_, id)| id).collect();
    let graph = inst.graph.filter_edges(|e| kept.contains(&e.id));
    MatchingInstance {
        weight: inst.weight.restrict(&graph),
        gamma: inst.gamma.restrict(&graph),
        graph,
        t: inst.t,
        alpha: inst.alpha,
    }
}

/// Tutte matrix with `x_e` replaced by `x[e] · y^γ(e) · z^w(e)`; loops are
/// ignored.
pub fn tutte_matrix(inst: &MatchingInstance, x: &EdgeLabeling<u64>) -> SkewRingMatrix {
    let mut d = SkewRingMatrix::zero(inst.graph.n(), inst.t);
    for e in inst.graph.edges().iter().filter(|e| !e.is_loop()) {
        let (u, v) = (e.u.min(e.v), e.u.max(e.v));
        let term = GroupRingPoly::monomial(
            inst.t,
            BigInt::from(*x.get(e.id)),
            *inst.gamma.get(e.id),
            *inst.weight.get(e.id),
        );
        d.add_to(u, v, &term).expect("indices in range");
    }
    d
}

/// Smallest `reps` with `(1 / (2c))^reps <= epsilon`, at least 1.
pub fn default_reps(epsilon: f64, c: u64) -> u64 {
    assert!(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
    assert!(c > 0, "confidence must be positive");
    ((1.0 / epsilon).ln() / ((2 * c) as f64).ln())
        .ceil()
        .max(1.0) as u64
}

/// One evaluation at a random point drawn from `{1..c·n}^E`.
pub fn parity_matching_once<R: Rng>(inst: &MatchingInstance, c: u64, rng: &mut R) -> ExtNat {
    let n = inst.graph.n();
    if n % 2 == 1 {
        return ExtNat::INF;
    }
    if n == 0 {
        return if inst.alpha.is_zero() {
            ExtNat::ZERO
        } else {
            ExtNat::INF
        };
    }
    let top = c * n as u64;
    let x = EdgeLabeling::from_vec(
        &inst.graph,
        inst.graph
            .edges()
            .iter()
            .map(|_| rng.gen_range(1..=top))
            .collect(),
    );
    let pf = pfaffian_dag(&tutte_matrix(inst, &x));
    pf.mindeg_z(inst.alpha).into()
}

/// Minimum over `reps` independent evaluations, evaluation `i` seeded by
/// `derive_seed(seed, i)`. Never below the true optimum; above it with
/// probability at most `(1 / (2c))^reps`.
pub fn parity_matching(
    inst: &MatchingInstance,
    c: u64,
    reps: u64,
    seed: u64,
) -> Result<ExtNat, MatchingError> {
    if c == 0 {
        return Err(MatchingError::ZeroConfidence);
    }
    let n = inst.graph.n();
    if n % 2 == 1 {
        return Ok(ExtNat::INF);
    }
    let reduced = dedupe_parallel(inst);
    let mut best = ExtNat::INF;
    for i in 0..reps.max(1) {
        let mut rng = rng_from_seed(derive_seed(seed, i));
        best = best.min(parity_matching_once(&reduced, c, &mut rng));
    }
    Ok(best)
}
