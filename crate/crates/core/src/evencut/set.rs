//! The set variant: minimum cut `δ(X)` over non-empty proper `X` meeting
//! every terminal set in an even number of vertices.

use std::collections::BTreeSet;

use rand::Rng;

use super::{base_case_size, keep_best, repetitions, ContractionOptions, CutResult, EvenCutError};
use crate::gf2::{null_space_basis, Gf2Matrix};
use crate::graph::{EdgeId, MultiGraph, UnionFind, Vertex};
use crate::parity::{Parity, MAX_PARITY_DIM};
use crate::seed::{derive_seed, rng_from_seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetEvenCutInstance {
    pub graph: MultiGraph,
    pub terminals: Vec<BTreeSet<Vertex>>,
}

impl SetEvenCutInstance {
    /// Checks that every terminal set is even and inside the graph.
    pub fn new(graph: MultiGraph, terminals: Vec<BTreeSet<Vertex>>) -> Result<Self, EvenCutError> {
        if terminals.len() as u32 > MAX_PARITY_DIM {
            return Err(EvenCutError::TooLarge {
                t: terminals.len() as u32,
                cap: MAX_PARITY_DIM,
            });
        }
        for (i, ts) in terminals.iter().enumerate() {
            if let Some(&v) = ts.iter().find(|&&v| v == 0 || v > graph.n()) {
                return Err(EvenCutError::TerminalOutOfRange { set: i + 1, v });
            }
            if ts.len() % 2 == 1 {
                return Err(EvenCutError::OddTerminalSet(i + 1));
            }
        }
        Ok(Self { graph, terminals })
    }

    pub fn t(&self) -> u32 {
        self.terminals.len() as u32
    }

    /// Bit `i` of the label of `v` is set when `v ∈ T_{i+1}`.
    pub fn label(&self, v: Vertex) -> Parity {
        self.terminals
            .iter()
            .enumerate()
            .fold(Parity::ZERO, |p, (i, ts)| {
                p.with_bit(i as u32, ts.contains(&v))
            })
    }

    /// Whether `side` is a non-empty proper set meeting each `T_i` evenly.
    pub fn is_even_side(&self, side: &[Vertex]) -> bool {
        let set: BTreeSet<Vertex> = side.iter().copied().collect();
        !set.is_empty()
            && set.len() < self.graph.n()
            && self
                .terminals
                .iter()
                .all(|ts| ts.intersection(&set).count() % 2 == 0)
    }
}

/// Feasible unless the whole vertex set is a circuit of the terminal matrix,
/// that is unless its null space is `{∅, V}` or smaller.
pub fn set_feasible(inst: &SetEvenCutInstance) -> bool {
    let n = inst.graph.n();
    let mut a = Gf2Matrix::zeros(inst.terminals.len(), n);
    for (i, ts) in inst.terminals.iter().enumerate() {
        for &v in ts {
            a.set(i, v - 1, true);
        }
    }
    n >= crate::gf2::rank(&a) + 2
}

/// Contracts edge `e`; the merged vertex lies in `T_i` iff exactly one end did.
pub fn set_contract(
    inst: &SetEvenCutInstance,
    e: EdgeId,
) -> Result<SetEvenCutInstance, EvenCutError> {
    let edge = *inst
        .graph
        .edge(e)
        .ok_or(crate::graph::GraphError::UnknownEdge(e))?;
    let (g, map) = inst.graph.contract_edge(e)?;
    let z = map[edge.u];
    let terminals = inst
        .terminals
        .iter()
        .map(|ts| {
            let mut out: BTreeSet<Vertex> = ts
                .iter()
                .filter(|&&v| v != edge.u && v != edge.v)
                .map(|&v| map[v])
                .collect();
            if ts.contains(&edge.u) != ts.contains(&edge.v) {
                out.insert(z);
            }
            out
        })
        .collect();
    Ok(SetEvenCutInstance {
        graph: g,
        terminals,
    })
}

/// Exact minimum by enumerating every `X`; `None` when infeasible.
pub fn set_exhaustive(inst: &SetEvenCutInstance) -> Option<CutResult> {
    let state = Contracted::new(inst);
    state.exhaustive()
}

/// One run of the contraction algorithm.
pub fn set_random_contraction<R: Rng>(
    inst: &SetEvenCutInstance,
    rng: &mut R,
    opts: ContractionOptions,
) -> Result<CutResult, EvenCutError> {
    check(inst, opts)?;
    Ok(run(inst, rng))
}

/// Best of `c·n^4` independent runs, run `i` seeded by `derive_seed(seed, i)`.
/// Instances already at base-case size are solved by a single exact run.
pub fn set_min_even_cut(
    inst: &SetEvenCutInstance,
    c: u64,
    seed: u64,
    opts: ContractionOptions,
) -> Result<CutResult, EvenCutError> {
    check(inst, opts)?;
    let reps = if inst.graph.n() <= base_case_size(inst.t()) {
        1
    } else {
        repetitions(c, inst.graph.n())
    };
    let mut best = None;
    for i in 0..reps {
        let mut rng = rng_from_seed(derive_seed(seed, i));
        keep_best(&mut best, run(inst, &mut rng));
    }
    Ok(best.expect("at least one repetition"))
}

fn check(inst: &SetEvenCutInstance, opts: ContractionOptions) -> Result<(), EvenCutError> {
    if inst.t() > opts.t_cap {
        return Err(EvenCutError::TooLarge {
            t: inst.t(),
            cap: opts.t_cap,
        });
    }
    if !set_feasible(inst) {
        return Err(EvenCutError::Infeasible);
    }
    Ok(())
}

fn run<R: Rng>(inst: &SetEvenCutInstance, rng: &mut R) -> CutResult {
    let mut state = Contracted::new(inst);
    let limit = base_case_size(inst.t());
    loop {
        state.drop_loops();
        if state.vertices <= limit {
            return state
                .exhaustive()
                .expect("feasibility survives contraction");
        }
        if state.alive.is_empty() {
            return state.empty_cut();
        }
        let pick = state.alive[rng.gen_range(0..state.alive.len())];
        state.contract(pick);
    }
}

/// Contraction state over the original vertex and edge numbering.
struct Contracted<'a> {
    inst: &'a SetEvenCutInstance,
    uf: UnionFind,
    /// Label of each root.
    label: Vec<Parity>,
    /// Positions of edges that are not yet loops.
    alive: Vec<usize>,
    vertices: usize,
}

impl<'a> Contracted<'a> {
    fn new(inst: &'a SetEvenCutInstance) -> Self {
        let n = inst.graph.n();
        let mut label = vec![Parity::ZERO; n + 1];
        for (v, l) in label.iter_mut().enumerate().skip(1) {
            *l = inst.label(v);
        }
        Self {
            inst,
            uf: UnionFind::new(n + 1),
            label,
            alive: (0..inst.graph.m()).collect(),
            vertices: n,
        }
    }

    fn ends(&mut self, pos: usize) -> (usize, usize) {
        let e = self.inst.graph.edges()[pos];
        (self.uf.find(e.u), self.uf.find(e.v))
    }

    fn drop_loops(&mut self) {
        let mut alive = std::mem::take(&mut self.alive);
        alive.retain(|&p| {
            let (a, b) = self.ends(p);
            a != b
        });
        self.alive = alive;
    }

    fn contract(&mut self, pos: usize) {
        let (a, b) = self.ends(pos);
        let merged = self.label[a] + self.label[b];
        let root = self.uf.union(a, b).expect("not a loop");
        self.label[root] = merged;
        self.vertices -= 1;
    }

    fn roots(&mut self) -> Vec<usize> {
        let n = self.inst.graph.n();
        (1..=n).filter(|&v| self.uf.find(v) == v).collect()
    }

    fn side_of(&mut self, roots: &[usize], mask: u64) -> Vec<Vertex> {
        let n = self.inst.graph.n();
        (1..=n)
            .filter(|&v| {
                let r = self.uf.find(v);
                let i = roots.iter().position(|&x| x == r).expect("root listed");
                mask >> i & 1 == 1
            })
            .collect()
    }

    fn exhaustive(mut self) -> Option<CutResult> {
        let roots = self.roots();
        let k = roots.len();
        assert!(k < 64, "exhaustive search over {k} vertices");
        let index_of = |r: usize| roots.iter().position(|&x| x == r).expect("root listed");
        let mut edges: Vec<(EdgeId, usize, usize)> = Vec::new();
        for pos in 0..self.inst.graph.m() {
            let (a, b) = self.ends(pos);
            if a != b {
                edges.push((self.inst.graph.edges()[pos].id, index_of(a), index_of(b)));
            }
        }
        edges.sort_unstable();
        let labels: Vec<Parity> = roots.iter().map(|&r| self.label[r]).collect();
        let full = (1u64 << k) - 1;
        let mut best: Option<(usize, Vec<EdgeId>, u64)> = None;
        let mut tau = Parity::ZERO;
        let mut mask = 0u64;
        for step in 1..=full {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            tau += labels[bit];
            if mask == full || !tau.is_zero() {
                continue;
            }
            let size = edges
                .iter()
                .filter(|&&(_, a, b)| (mask >> a ^ mask >> b) & 1 == 1)
                .count();
            if best.as_ref().is_some_and(|b| size > b.0) {
                continue;
            }
            let ids: Vec<EdgeId> = edges
                .iter()
                .filter(|&&(_, a, b)| (mask >> a ^ mask >> b) & 1 == 1)
                .map(|&(id, _, _)| id)
                .collect();
            if best.as_ref().is_none_or(|b| (size, &ids) < (b.0, &b.1)) {
                best = Some((size, ids, mask));
            }
        }
        let (size, edges, mask) = best?;
        let side = self.side_of(&roots, mask);
        Some(CutResult {
            size,
            edges,
            side,
            choice: None,
        })
    }

    /// No edges left: any admissible side gives the empty cut.
    fn empty_cut(mut self) -> CutResult {
        let roots = self.roots();
        let t = self.inst.t() as usize;
        let mut a = Gf2Matrix::zeros(t, roots.len());
        for (j, &r) in roots.iter().enumerate() {
            for i in 0..t {
                a.set(i, j, self.label[r].bit(i as u32));
            }
        }
        let x = null_space_basis(&a)
            .into_iter()
            .find(|v| v.weight() < roots.len())
            .expect("feasible instance has a proper null vector");
        let mask = x.iter_ones().fold(0u64, |m, i| m | 1 << i);
        let side = self.side_of(&roots, mask);
        CutResult {
            size: 0,
            edges: Vec::new(),
            side,
            choice: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, pairs: &[(usize, usize)], ts: &[&[usize]]) -> SetEvenCutInstance {
        SetEvenCutInstance::new(
            MultiGraph::from_pairs(n, pairs).unwrap(),
            ts.iter().map(|t| t.iter().copied().collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(!set_feasible(&inst(2, &[(1, 2)], &[&[1, 2]])));
        assert!(set_feasible(&inst(3, &[(1, 2)], &[&[1, 2]])));
        assert!(set_feasible(&inst(2, &[(1, 2)], &[])));
        assert!(!set_feasible(&inst(1, &[], &[])));
    }

    #[test]
    fn contract_updates_terminals() {
        let i = inst(3, &[(1, 2), (2, 3)], &[&[1, 2], &[2, 3], &[]]);
        let c = set_contract(&i, 0).unwrap();
        assert!(c.terminals[0].is_empty());
        assert_eq!(c.terminals[1], [1, 2].into_iter().collect());
        assert!(c.terminals[2].is_empty());
        let looped = inst(1, &[(1, 1)], &[]);
        assert!(set_contract(&looped, 0).is_err());
    }

    #[test]
    fn odd_terminal_set_is_named() {
        let g = MultiGraph::from_pairs(3, &[(1, 2)]).unwrap();
        let err = SetEvenCutInstance::new(g, vec![BTreeSet::new(), [1].into_iter().collect()]);
        assert_eq!(err, Err(EvenCutError::OddTerminalSet(2)));
    }

    #[test]
    fn cycle_min_cut_is_two() {
        let pairs: Vec<(usize, usize)> = (1..=6).map(|i| (i, i % 6 + 1)).collect();
        let i = inst(6, &pairs, &[]);
        let r = set_min_even_cut(&i, 1, 7, ContractionOptions::default()).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(i.graph.cut(&r.side), r.edges);
    }

    #[test]
    fn bridge_is_found() {
        // Two 4-cliques joined by the bridge 4-5.
        let mut pairs = Vec::new();
        for base in [0, 4] {
            for a in 1..=4 {
                for b in a + 1..=4 {
                    pairs.push((base + a, base + b));
                }
            }
        }
        pairs.push((4, 5));
        let bridge = pairs.len() - 1;
        let i = inst(8, &pairs, &[&[1, 2]]);
        let r = set_min_even_cut(&i, 1, 3, ContractionOptions::default()).unwrap();
        assert_eq!(r.edges, vec![bridge]);
        assert!(i.is_even_side(&r.side));
    }

    #[test]
    fn disconnected_large_instance_returns_empty_cut() {
        let i = inst(12, &[(1, 2)], &[]);
        let mut rng = rng_from_seed(1);
        let r = set_random_contraction(&i, &mut rng, ContractionOptions::default()).unwrap();
        assert_eq!(r.size, 0);
        assert!(i.is_even_side(&r.side));
        assert!(i.graph.cut(&r.side).is_empty());
    }
}
