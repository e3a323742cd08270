//! End-to-end girth and cogirth of `M(A + P)`.
//!
//! `A` is read as a graph and `P = BC` is folded into a signed graft. Girth
//! splits over the `2^t` column reductions, each solved by a walk-based
//! count of circuits avoiding the extra column plus one parity join for
//! circuits through it. Cogirth splits over the `2^t` row reductions, each
//! an even-cut instance solved by random contraction.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::evencut::{
    base_case_size, c_for_epsilon, connectivity_reduce, dim_feasible, dim_min_cocycle, repetitions,
    ConnectivityReduction, ContractionOptions, CutResult, EvenCutError,
};
use crate::ext::ExtNat;
use crate::gf2::{rank, Gf2Error, Gf2Matrix, Gf2Vector};
use crate::graft::{from_perturbation, reduce_s, reduce_t, to_evencut, GraftError, SignedGraft};
use crate::graph::{graph_from_incidence, EdgeLabeling, GraphError, MultiGraph, Vertex};
use crate::parity::Parity;
use crate::parityjoin::{parity_cycle, parity_join, two_join, ParityGraph, ParityJoinError};
use crate::pfaffian::{default_reps, DEFAULT_CONFIDENCE};
use crate::seed::derive_seed;

#[derive(Debug, Error, PartialEq)]
pub enum PipelineError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    Epsilon(f64),
    #[error("A is {a_rows}x{a_cols} but P is {p_rows}x{p_cols}")]
    Shape {
        a_rows: usize,
        a_cols: usize,
        p_rows: usize,
        p_cols: usize,
    },
    #[error("expected a graft with t = 1, found t = {0}")]
    NotSingleColumn(usize),
    #[error("cocycle witness {0:?} is not in the row space")]
    BadWitness(Vec<usize>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graft(#[from] GraftError),
    #[error(transparent)]
    EvenCut(#[from] EvenCutError),
    #[error(transparent)]
    Join(#[from] ParityJoinError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Total failure probability, split evenly over the randomized calls.
    pub epsilon: f64,
    pub seed: u64,
    pub contraction: ContractionOptions,
    /// Overrides the matching repetitions derived from `epsilon`.
    pub reps: Option<u64>,
    /// Overrides the contraction confidence derived from `epsilon`.
    pub confidence: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            seed: 0,
            contraction: ContractionOptions::default(),
            reps: None,
            confidence: None,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<(), PipelineError> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(PipelineError::Epsilon(self.epsilon));
        }
        Ok(())
    }

    fn matching_reps(&self, branches: u64) -> u64 {
        self.reps
            .unwrap_or_else(|| default_reps(self.epsilon / branches as f64, DEFAULT_CONFIDENCE))
    }

    fn contraction_c(&self, branches: u64) -> u64 {
        self.confidence
            .unwrap_or_else(|| c_for_epsilon(self.epsilon / branches as f64))
    }
}

/// Result of [`girth_perturbed`] with the randomness it was allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthReport {
    pub value: ExtNat,
    pub branches: u64,
    /// Matching confidence and repetitions per branch.
    pub c: u64,
    pub reps: u64,
}

/// Result of [`cogirth_perturbed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CogirthReport {
    pub value: ExtNat,
    /// Sorted column indices of a minimum cocycle; empty when the value is
    /// infinite.
    pub witness: Vec<usize>,
    pub branches: u64,
    /// Contraction confidence per branch.
    pub c: u64,
    /// Contraction runs on a connected part with every vertex of the graph.
    pub reps: u64,
}

fn parity_graph(sg: &SignedGraft, g: &MultiGraph) -> ParityGraph {
    let gamma = EdgeLabeling::from_vec(
        g,
        g.edge_ids()
            .map(|id| sg.gamma(sg.graph.position(id).expect("subgraph edge")))
            .collect(),
    );
    ParityGraph::new(g.clone(), sg.s() as u32, gamma).expect("C has s rows")
}

/// Girth of `M(graft) / T` for a graft with a single extra column.
/// Randomness is confined to one parity join, run with confidence `c` and
/// `reps` repetitions.
pub fn girth_graft_t1(
    sg: &SignedGraft,
    c: u64,
    reps: u64,
    seed: u64,
) -> Result<ExtNat, PipelineError> {
    if sg.t() != 1 {
        return Err(PipelineError::NotSingleColumn(sg.t()));
    }
    let contracted = sg.contracted();
    let columns = contracted.matrix().columns();
    if columns.iter().any(Gf2Vector::is_zero) {
        return Ok(ExtNat::finite(1));
    }
    let (n, m, s) = (sg.graph.n() as u64, sg.graph.m() as u64, sg.s() as u32);
    // Edge columns are determined by their ends and parity, so beyond this
    // many edges two of them coincide.
    let classes = (1u64 << s) * (n * n.saturating_sub(1) / 2) + (1u64 << s) - 1;
    if m > classes {
        return Ok(ExtNat::finite(2));
    }
    let mut seen = HashSet::new();
    if !columns.iter().all(|c| seen.insert(c.clone())) {
        return Ok(ExtNat::finite(2));
    }

    let mut k1 = ExtNat::INF;
    for (pos, f) in sg.graph.edges().iter().enumerate() {
        let rest = parity_graph(sg, &sg.graph.delete_edge(f.id)?);
        let closing = if f.is_loop() {
            parity_cycle(&rest, sg.gamma(pos))?
        } else {
            two_join(&rest, f.u, f.v, sg.gamma(pos))?
        };
        k1 = k1.min(closing + 1);
    }

    let extra = sg.b.column(0);
    let alpha = Parity((0..sg.s()).fold(0, |acc, i| acc | (u32::from(sg.d.get(i, 0)) << i)));
    if extra.is_zero() && alpha.is_zero() {
        return Ok(k1);
    }
    let terminals: BTreeSet<Vertex> = extra.iter_ones().map(|i| i + 1).collect();
    let k2 = parity_join(
        &parity_graph(sg, &sg.graph),
        &terminals,
        alpha,
        c,
        reps,
        seed,
    )?;
    Ok(k1.min(k2))
}

fn graph_and_graft(a: &Gf2Matrix, p: &Gf2Matrix) -> Result<SignedGraft, PipelineError> {
    if a.nrows() != p.nrows() || a.ncols() != p.ncols() {
        return Err(PipelineError::Shape {
            a_rows: a.nrows(),
            a_cols: a.ncols(),
            p_rows: p.nrows(),
            p_cols: p.ncols(),
        });
    }
    let g = graph_from_incidence(a)?;
    Ok(from_perturbation(&g, p)?)
}

/// Girth of `M(A + P)` for an incidence matrix `A`. Never below the true
/// girth; above it with probability at most `cfg.epsilon`.
pub fn girth_perturbed(
    a: &Gf2Matrix,
    p: &Gf2Matrix,
    cfg: &SolverConfig,
) -> Result<GirthReport, PipelineError> {
    cfg.check()?;
    let sg = graph_and_graft(a, p)?;
    let branches = reduce_t(&sg)?;
    let count = branches.len() as u64;
    let reps = cfg.matching_reps(count);
    let mut value = ExtNat::INF;
    for (x, branch) in branches.iter().enumerate() {
        let seed = derive_seed(cfg.seed, x as u64);
        value = value.min(girth_graft_t1(branch, DEFAULT_CONFIDENCE, reps, seed)?);
    }
    Ok(GirthReport {
        value,
        branches: count,
        c: DEFAULT_CONFIDENCE,
        reps,
    })
}

/// Minimum cocycle of `M(graft) / T` for a graft with a single row `S`.
fn cogirth_graft_s1(
    sg: &SignedGraft,
    c: u64,
    seed: u64,
    opts: ContractionOptions,
) -> Result<Option<CutResult>, PipelineError> {
    let inst = to_evencut(sg)?;
    match connectivity_reduce(&inst) {
        ConnectivityReduction::Direct(best) => Ok(best),
        ConnectivityReduction::Connected(parts) => {
            let mut best: Option<CutResult> = None;
            for (i, part) in parts.iter().enumerate() {
                if !dim_feasible(part) {
                    continue;
                }
                let cand = dim_min_cocycle(part, c, derive_seed(seed, i as u64), opts)?;
                if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                    best = Some(cand);
                }
            }
            Ok(best)
        }
    }
}

/// Cogirth of `M(A + P)` with a minimum cocycle. Never below the true
/// cogirth; above it with probability at most `cfg.epsilon`. The witness is
/// checked against the row space of `A + P` before it is returned.
pub fn cogirth_perturbed(
    a: &Gf2Matrix,
    p: &Gf2Matrix,
    cfg: &SolverConfig,
) -> Result<CogirthReport, PipelineError> {
    cfg.check()?;
    let sg = graph_and_graft(a, p)?;
    let branches = reduce_s(&sg)?;
    let count = branches.len() as u64;
    // Each row branch may split once more by connectivity.
    let c = cfg.contraction_c(count * count);
    let n = sg.graph.n();
    let reps = if n <= base_case_size(sg.t() as u32) {
        1
    } else {
        repetitions(c, n)
    };
    let mut best: Option<CutResult> = None;
    for (y, branch) in branches.iter().enumerate() {
        let seed = derive_seed(cfg.seed, y as u64);
        if let Some(cand) = cogirth_graft_s1(branch, c, seed, cfg.contraction)? {
            if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                best = Some(cand);
            }
        }
    }
    let Some(best) = best else {
        return Ok(CogirthReport {
            value: ExtNat::INF,
            witness: Vec::new(),
            branches: count,
            c,
            reps,
        });
    };
    let sum = a.add(p)?;
    let w = Gf2Vector::from_support(sum.ncols(), best.edges.iter().copied());
    let stacked = sum.vstack(&Gf2Matrix::from_rows(sum.ncols(), vec![w])?)?;
    if rank(&stacked) != rank(&sum) {
        return Err(PipelineError::BadWitness(best.edges));
    }
    Ok(CogirthReport {
        value: ExtNat::finite(best.size as u64),
        witness: best.edges,
        branches: count,
        c,
        reps,
    })
}
