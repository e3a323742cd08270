//! Shortest walks, cycles and joins of prescribed parity in an edge-labelled
//! graph.
//!
//! Walks are searched in the product graph on `V × GF(2)^t`, where `(u, β)`
//! and `(v, β + γ(e))` are joined for every edge `e = uv`. Cycles combine
//! closed walks of distinct parities; joins with two terminals combine one
//! walk with a cycle, and larger terminal sets go through a parity matching
//! on the terminal graph.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::ext::ExtNat;
use crate::graph::{EdgeLabeling, GraphError, MultiGraph, Vertex};
use crate::parity::{Parity, MAX_PARITY_DIM};
use crate::pfaffian::{parity_matching, MatchingError, MatchingInstance};

/// Largest `t` accepted by [`wtilde_table`].
pub const TABLE_T_CAP: u32 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParityJoinError {
    #[error("t = {t} exceeds the cap of {cap}")]
    TooLarge { t: u32, cap: u32 },
    #[error("parity {0} does not fit in t bits")]
    ParityWidth(u32),
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(Vertex),
    #[error("two-terminal join needs distinct terminals, got {0} twice")]
    SameTerminal(Vertex),
    #[error("terminal set has odd cardinality {0}")]
    OddTerminals(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// A multigraph with a parity on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGraph {
    pub graph: MultiGraph,
    pub t: u32,
    pub gamma: EdgeLabeling<Parity>,
}

impl ParityGraph {
    pub fn new(
        graph: MultiGraph,
        t: u32,
        gamma: EdgeLabeling<Parity>,
    ) -> Result<Self, ParityJoinError> {
        if t > MAX_PARITY_DIM {
            return Err(ParityJoinError::TooLarge {
                t,
                cap: MAX_PARITY_DIM,
            });
        }
        check_width(t, gamma.iter().map(|(_, p)| *p))?;
        let gamma = EdgeLabeling::new(&graph, gamma.iter().map(|(k, v)| (k, *v)).collect())?;
        Ok(Self { graph, t, gamma })
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), ParityJoinError> {
        if v == 0 || v > self.graph.n() {
            return Err(ParityJoinError::VertexOutOfRange(v));
        }
        Ok(())
    }
}

fn check_width(t: u32, parities: impl IntoIterator<Item = Parity>) -> Result<(), ParityJoinError> {
    let limit = 1u64 << t;
    match parities.into_iter().find(|p| u64::from(p.0) >= limit) {
        Some(p) => Err(ParityJoinError::ParityWidth(p.0)),
        None => Ok(()),
    }
}

/// A value in `ExtNat` for every `β ∈ GF(2)^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTable {
    t: u32,
    values: Vec<ExtNat>,
}

impl ParityTable {
    pub fn infinite(t: u32) -> Self {
        Self {
            t,
            values: vec![ExtNat::INF; 1 << t],
        }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn get(&self, beta: Parity) -> ExtNat {
        self.values[beta.0 as usize]
    }

    pub fn set(&mut self, beta: Parity, value: ExtNat) {
        self.values[beta.0 as usize] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (Parity, ExtNat)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(b, &v)| (Parity(b as u32), v))
    }
}

/// BFS distances from `(source, 0)` in the product graph, indexed by
/// `(v - 1) · 2^t + β`.
fn walk_distances(pg: &ParityGraph, source: Vertex) -> Vec<ExtNat> {
    let width = 1usize << pg.t;
    let n = pg.graph.n();
    let mut adj: Vec<Vec<(Vertex, u32)>> = vec![Vec::new(); n + 1];
    for e in pg.graph.edges() {
        let g = pg.gamma.get(e.id).0;
        adj[e.u].push((e.v, g));
        if !e.is_loop() {
            adj[e.v].push((e.u, g));
        }
    }
    let idx = |v: Vertex, b: u32| (v - 1) * width + b as usize;
    let mut dist = vec![ExtNat::INF; n * width];
    let mut queue = VecDeque::new();
    dist[idx(source, 0)] = ExtNat::ZERO;
    queue.push_back((source, 0u32, 0u64));
    while let Some((v, b, d)) = queue.pop_front() {
        for &(w, g) in &adj[v] {
            let k = idx(w, b ^ g);
            if !dist[k].is_finite() {
                dist[k] = ExtNat::finite(d + 1);
                queue.push_back((w, b ^ g, d + 1));
            }
        }
    }
    dist
}

/// Length of a shortest `(u, v)`-walk of parity `alpha`.
pub fn parity_walk(
    pg: &ParityGraph,
    alpha: Parity,
    u: Vertex,
    v: Vertex,
) -> Result<ExtNat, ParityJoinError> {
    pg.check_vertex(u)?;
    pg.check_vertex(v)?;
    check_width(pg.t, [alpha])?;
    Ok(walk_distances(pg, u)[(v - 1) * (1 << pg.t) + alpha.0 as usize])
}

/// Shortest `(u, v)`-walk length for every parity.
pub fn walk_table(pg: &ParityGraph, u: Vertex, v: Vertex) -> Result<ParityTable, ParityJoinError> {
    pg.check_vertex(u)?;
    pg.check_vertex(v)?;
    let width = 1usize << pg.t;
    let dist = walk_distances(pg, u);
    Ok(ParityTable {
        t: pg.t,
        values: dist[(v - 1) * width..v * width].to_vec(),
    })
}

/// Shortest closed walk of each parity; the empty walk gives `w(0) = 0`.
pub fn closed_walk_table(pg: &ParityGraph) -> ParityTable {
    let width = 1usize << pg.t;
    let mut w = ParityTable::infinite(pg.t);
    w.set(Parity::ZERO, ExtNat::ZERO);
    for u in pg.graph.vertices() {
        let dist = walk_distances(pg, u);
        for b in 0..width {
            let cand = dist[(u - 1) * width + b];
            w.values[b] = w.values[b].min(cand);
        }
    }
    w
}

/// `w̃(β)`: minimum of `Σ w(a)` over sets `S` of parities summing to `β`.
///
/// Each parity is either taken once or not at all, so a knapsack pass over
/// the `2^t` parities gives the exact subset minimum.
pub fn wtilde_table(w: &ParityTable) -> Result<ParityTable, ParityJoinError> {
    if w.t > TABLE_T_CAP {
        return Err(ParityJoinError::TooLarge {
            t: w.t,
            cap: TABLE_T_CAP,
        });
    }
    let width = 1usize << w.t;
    let mut best = ParityTable::infinite(w.t);
    best.values[0] = ExtNat::ZERO;
    for a in 1..width {
        let cost = w.values[a];
        if !cost.is_finite() {
            continue;
        }
        let prev = best.values.clone();
        for b in 0..width {
            best.values[b] = prev[b].min(prev[b ^ a] + cost);
        }
    }
    Ok(best)
}

/// Smallest edge set of parity `alpha` with every degree even; may be empty.
pub fn parity_cycle(pg: &ParityGraph, alpha: Parity) -> Result<ExtNat, ParityJoinError> {
    check_width(pg.t, [alpha])?;
    Ok(wtilde_table(&closed_walk_table(pg))?.get(alpha))
}

fn combine(walks: &ParityTable, cycles: &ParityTable, alpha: Parity) -> ExtNat {
    walks
        .iter()
        .map(|(b, w)| w + cycles.get(alpha + b))
        .min()
        .unwrap_or(ExtNat::INF)
}

/// Smallest `{u, v}`-join of parity `alpha`, for distinct `u` and `v`.
pub fn two_join(
    pg: &ParityGraph,
    u: Vertex,
    v: Vertex,
    alpha: Parity,
) -> Result<ExtNat, ParityJoinError> {
    if u == v {
        return Err(ParityJoinError::SameTerminal(u));
    }
    check_width(pg.t, [alpha])?;
    let walks = walk_table(pg, u, v)?;
    let cycles = wtilde_table(&closed_walk_table(pg))?;
    Ok(combine(&walks, &cycles, alpha))
}

/// `2^t · n`, an upper bound on every finite optimal join.
pub fn join_size_bound(t: u32, n: usize) -> u64 {
    (1u64 << t) * n as u64
}

/// The terminal graph: vertex `i` stands for `terminals[i - 1]`, and every
/// pair is joined once per parity `β` with finite two-terminal optimum,
/// weighted by that optimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinGraph {
    pub terminals: Vec<Vertex>,
    pub matching: MatchingInstance,
}

pub fn build_join_graph(
    pg: &ParityGraph,
    terminals: &BTreeSet<Vertex>,
    alpha: Parity,
) -> Result<JoinGraph, ParityJoinError> {
    for &v in terminals {
        pg.check_vertex(v)?;
    }
    check_width(pg.t, [alpha])?;
    if terminals.len() % 2 == 1 {
        return Err(ParityJoinError::OddTerminals(terminals.len()));
    }
    if pg.t > TABLE_T_CAP {
        return Err(ParityJoinError::TooLarge {
            t: pg.t,
            cap: TABLE_T_CAP,
        });
    }
    let terms: Vec<Vertex> = terminals.iter().copied().collect();
    let cycles = wtilde_table(&closed_walk_table(pg))?;
    let width = 1usize << pg.t;
    let mut h = MultiGraph::new(terms.len());
    let mut weight = Vec::new();
    let mut gamma = Vec::new();
    for (i, &u) in terms.iter().enumerate() {
        let dist = walk_distances(pg, u);
        for (j, &v) in terms.iter().enumerate().skip(i + 1) {
            let walks = ParityTable {
                t: pg.t,
                values: dist[(v - 1) * width..v * width].to_vec(),
            };
            for beta in Parity::all(pg.t) {
                if let Some(cost) = combine(&walks, &cycles, beta).value() {
                    h.push_edge(i + 1, j + 1)?;
                    weight.push(cost);
                    gamma.push(beta);
                }
            }
        }
    }
    let weight = EdgeLabeling::from_vec(&h, weight);
    let gamma = EdgeLabeling::from_vec(&h, gamma);
    let matching = MatchingInstance::new(h, pg.t, weight, gamma, alpha)?;
    Ok(JoinGraph {
        terminals: terms,
        matching,
    })
}

/// Smallest `T`-join of parity `alpha`. The empty terminal set asks for a
/// cycle; larger sets are solved by a randomized parity matching with
/// confidence `c` and `reps` repetitions, which can only over-estimate.
pub fn parity_join(
    pg: &ParityGraph,
    terminals: &BTreeSet<Vertex>,
    alpha: Parity,
    c: u64,
    reps: u64,
    seed: u64,
) -> Result<ExtNat, ParityJoinError> {
    for &v in terminals {
        pg.check_vertex(v)?;
    }
    check_width(pg.t, [alpha])?;
    if terminals.is_empty() {
        return parity_cycle(pg, alpha);
    }
    if terminals.len() % 2 == 1 {
        return Ok(ExtNat::INF);
    }
    let h = build_join_graph(pg, terminals, alpha)?;
    Ok(parity_matching(&h.matching, c, reps, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, edges: &[(usize, usize, u32)], t: u32) -> ParityGraph {
        let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.0, e.1)).collect();
        let g = MultiGraph::from_pairs(n, &pairs).unwrap();
        let gamma = EdgeLabeling::from_vec(&g, edges.iter().map(|e| Parity(e.2)).collect());
        ParityGraph::new(g, t, gamma).unwrap()
    }

    #[test]
    fn walks() {
        let g = pg(2, &[(1, 2, 1)], 1);
        assert_eq!(parity_walk(&g, Parity(0), 1, 1).unwrap(), ExtNat::ZERO);
        assert_eq!(parity_walk(&g, Parity(0), 1, 2).unwrap(), ExtNat::INF);
        assert_eq!(parity_walk(&g, Parity(1), 2, 1).unwrap(), ExtNat::finite(1));
        assert_eq!(
            parity_walk(&g, Parity(0), 1, 3),
            Err(ParityJoinError::VertexOutOfRange(3))
        );
    }

    #[test]
    fn closed_walks() {
        let forest = pg(4, &[(1, 2, 0), (2, 3, 0)], 1);
        let w = closed_walk_table(&forest);
        assert_eq!(w.get(Parity(0)), ExtNat::ZERO);
        assert_eq!(w.get(Parity(1)), ExtNat::INF);
        let lp = pg(1, &[(1, 1, 1)], 1);
        assert_eq!(closed_walk_table(&lp).get(Parity(1)), ExtNat::finite(1));
        let tri = pg(3, &[(1, 2, 1), (2, 3, 0), (3, 1, 0)], 1);
        assert_eq!(closed_walk_table(&tri).get(Parity(1)), ExtNat::finite(3));
    }

    #[test]
    fn wtilde_examples() {
        let mut w = ParityTable::infinite(1);
        w.set(Parity(0), ExtNat::ZERO);
        w.set(Parity(1), ExtNat::finite(5));
        assert_eq!(wtilde_table(&w).unwrap().get(Parity(1)), ExtNat::finite(5));

        let mut w = ParityTable::infinite(2);
        w.set(Parity(0), ExtNat::ZERO);
        w.set(Parity(0b01), ExtNat::finite(3));
        w.set(Parity(0b10), ExtNat::finite(4));
        w.set(Parity(0b11), ExtNat::finite(9));
        let wt = wtilde_table(&w).unwrap();
        assert_eq!(wt.get(Parity(0b11)), ExtNat::finite(7));
        assert_eq!(wt.get(Parity(0)), ExtNat::ZERO);
        assert!(wtilde_table(&ParityTable::infinite(5)).is_err());
    }

    #[test]
    fn cycles() {
        let tri = pg(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)], 1);
        assert_eq!(parity_cycle(&tri, Parity(0)).unwrap(), ExtNat::ZERO);
        assert_eq!(parity_cycle(&tri, Parity(1)).unwrap(), ExtNat::finite(3));
    }

    #[test]
    fn two_terminal() {
        let g = pg(2, &[(1, 2, 1)], 1);
        assert_eq!(two_join(&g, 1, 2, Parity(1)).unwrap(), ExtNat::finite(1));
        assert_eq!(two_join(&g, 1, 2, Parity(0)).unwrap(), ExtNat::INF);
        assert_eq!(
            two_join(&g, 1, 1, Parity(0)),
            Err(ParityJoinError::SameTerminal(1))
        );
        // Path 1-2 of parity 0 plus a disjoint odd triangle.
        let g = pg(5, &[(1, 2, 0), (3, 4, 1), (4, 5, 0), (5, 3, 0)], 1);
        assert_eq!(two_join(&g, 1, 2, Parity(1)).unwrap(), ExtNat::finite(4));
    }

    #[test]
    fn size_bound() {
        assert_eq!(join_size_bound(0, 7), 7);
        assert_eq!(join_size_bound(2, 10), 40);
    }

    #[test]
    fn join_graph_shape() {
        let g = pg(4, &[(1, 2, 0), (2, 3, 1), (3, 1, 0), (3, 4, 0)], 1);
        let h = build_join_graph(&g, &BTreeSet::from([1, 2]), Parity(0)).unwrap();
        assert!(h.matching.graph.m() <= 2);
        let split = pg(4, &[(1, 2, 0), (3, 4, 0)], 1);
        let h = build_join_graph(&split, &BTreeSet::from([1, 2, 3, 4]), Parity(0)).unwrap();
        assert!(h
            .matching
            .graph
            .edges()
            .iter()
            .all(|e| (e.u <= 2) == (e.v <= 2)));
        assert_eq!(
            build_join_graph(&split, &BTreeSet::from([1, 2, 3]), Parity(0)),
            Err(ParityJoinError::OddTerminals(3))
        );
    }

    #[test]
    fn join_special_cases() {
        let g = pg(4, &[(1, 2, 1), (2, 3, 0), (3, 4, 1), (4, 1, 0)], 1);
        let none = BTreeSet::new();
        assert_eq!(
            parity_join(&g, &none, Parity(0), 2, 5, 0).unwrap(),
            ExtNat::ZERO
        );
        let odd = BTreeSet::from([1, 2, 3]);
        assert_eq!(
            parity_join(&g, &odd, Parity(0), 2, 5, 0).unwrap(),
            ExtNat::INF
        );
        let pair = BTreeSet::from([1, 3]);
        for a in [Parity(0), Parity(1)] {
            assert_eq!(
                parity_join(&g, &pair, a, 2, 10, 3).unwrap(),
                two_join(&g, 1, 3, a).unwrap()
            );
        }
        let all = BTreeSet::from([1, 2, 3, 4]);
        assert_eq!(
            parity_join(&g, &all, Parity(0), 2, 10, 3).unwrap(),
            ExtNat::finite(2)
        );
        assert_eq!(
            parity_join(&g, &all, Parity(1), 2, 10, 3).unwrap(),
            ExtNat::INF
        );
    }
}
