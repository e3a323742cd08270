//! Exhaustive references for every randomized or table-driven routine. They
//! share no code with the solvers beyond the instance types and are meant for
//! instances with at most a couple of dozen edges or vertices.

use std::collections::BTreeSet;

use statrs::distribution::{Binomial, DiscreteCDF};
use thiserror::Error;

use crate::evencut::{EvenCutInstance, SetEvenCutInstance};
use crate::ext::ExtNat;
use crate::graph::{EdgeId, MultiGraph, Vertex};
use crate::parity::Parity;
use crate::parityjoin::ParityGraph;
use crate::pfaffian::MatchingInstance;

/// Largest edge or vertex count enumerated over all subsets.
pub const SUBSET_LIMIT: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{what} = {got} exceeds the enumeration limit of {SUBSET_LIMIT}")]
pub struct TooLarge {
    pub what: &'static str,
    pub got: usize,
}

fn guard(what: &'static str, got: usize) -> Result<(), TooLarge> {
    if got > SUBSET_LIMIT {
        return Err(TooLarge { what, got });
    }
    Ok(())
}

/// Minimum weight of a perfect matching whose parities sum to `alpha`, by
/// recursion on the lowest unmatched vertex. Loops never occur in a matching.
pub fn min_parity_matching(inst: &MatchingInstance) -> ExtNat {
    fn rec(
        inst: &MatchingInstance,
        incident: &[Vec<(Vertex, u64, Parity)>],
        used: &mut Vec<bool>,
        weight: u64,
        parity: Parity,
        best: &mut ExtNat,
    ) {
        let Some(u) = (1..used.len()).find(|&v| !used[v]) else {
            if parity == inst.alpha {
                *best = (*best).min(ExtNat::finite(weight));
            }
            return;
        };
        used[u] = true;
        for &(v, w, p) in &incident[u] {
            if !used[v] {
                used[v] = true;
                rec(inst, incident, used, weight + w, parity + p, best);
                used[v] = false;
            }
        }
        used[u] = false;
    }
    let n = inst.graph.n();
    let mut incident = vec![Vec::new(); n + 1];
    for e in inst.graph.edges().iter().filter(|e| !e.is_loop()) {
        let (w, p) = (*inst.weight.get(e.id), *inst.gamma.get(e.id));
        incident[e.u].push((e.v, w, p));
        incident[e.v].push((e.u, w, p));
    }
    let mut best = ExtNat::INF;
    rec(
        inst,
        &incident,
        &mut vec![false; n + 1],
        0,
        Parity::ZERO,
        &mut best,
    );
    best
}

/// Shortest `(u, v)`-walk of parity `alpha`, by a dynamic program over walk
/// lengths up to `2^t · n`: layer `k` holds the `(vertex, parity)` pairs
/// reachable by walks of length exactly `k`.
pub fn parity_walk(pg: &ParityGraph, alpha: Parity, u: Vertex, v: Vertex) -> ExtNat {
    let n = pg.graph.n();
    let width = 1usize << pg.t;
    let mut layer = vec![vec![false; width]; n + 1];
    layer[u][0] = true;
    let limit = width * n;
    for k in 0..=limit {
        if layer[v][alpha.0 as usize] {
            return ExtNat::finite(k as u64);
        }
        let mut next = vec![vec![false; width]; n + 1];
        for e in pg.graph.edges() {
            let g = pg.gamma.get(e.id).0 as usize;
            for b in 0..width {
                if layer[e.u][b] {
                    next[e.v][b ^ g] = true;
                }
                if layer[e.v][b] {
                    next[e.u][b ^ g] = true;
                }
            }
        }
        layer = next;
    }
    ExtNat::INF
}

fn min_subset(pg: &ParityGraph, odd: &BTreeSet<Vertex>, alpha: Parity) -> Result<ExtNat, TooLarge> {
    let m = pg.graph.m();
    guard("edge count", m)?;
    let edges = pg.graph.edges();
    let mut best = ExtNat::INF;
    for mask in 0u64..1 << m {
        let size = mask.count_ones() as u64;
        if ExtNat::finite(size) >= best {
            continue;
        }
        let mut deg = vec![false; pg.graph.n() + 1];
        let mut parity = Parity::ZERO;
        for (j, e) in edges.iter().enumerate() {
            if mask >> j & 1 == 1 {
                parity += *pg.gamma.get(e.id);
                if !e.is_loop() {
                    deg[e.u] = !deg[e.u];
                    deg[e.v] = !deg[e.v];
                }
            }
        }
        let odd_ok = pg.graph.vertices().all(|v| deg[v] == odd.contains(&v));
        if odd_ok && parity == alpha {
            best = ExtNat::finite(size);
        }
    }
    Ok(best)
}

/// Smallest (possibly empty) even-degree edge set of parity `alpha`.
pub fn parity_cycle(pg: &ParityGraph, alpha: Parity) -> Result<ExtNat, TooLarge> {
    min_subset(pg, &BTreeSet::new(), alpha)
}

/// Smallest edge set of parity `alpha` whose odd-degree vertices are exactly
/// `terminals`.
pub fn parity_join(
    pg: &ParityGraph,
    terminals: &BTreeSet<Vertex>,
    alpha: Parity,
) -> Result<ExtNat, TooLarge> {
    min_subset(pg, terminals, alpha)
}

/// Minimum `|δ(X)|` over non-empty proper `X` meeting every terminal set
/// evenly, with a minimizing cut. `None` if no such `X` exists.
pub fn set_even_cut(inst: &SetEvenCutInstance) -> Result<Option<(usize, Vec<EdgeId>)>, TooLarge> {
    let n = inst.graph.n();
    guard("vertex count", n)?;
    let mut best: Option<(usize, Vec<EdgeId>)> = None;
    for mask in 1u64..(1 << n) - 1 {
        let side: Vec<Vertex> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let even = inst
            .terminals
            .iter()
            .all(|t| side.iter().filter(|v| t.contains(v)).count() % 2 == 0);
        if !even {
            continue;
        }
        let cut = cut_of(&inst.graph, mask);
        if best
            .as_ref()
            .is_none_or(|b| (cut.len(), &cut) < (b.0, &b.1))
        {
            best = Some((cut.len(), cut));
        }
    }
    Ok(best)
}

fn cut_of(g: &MultiGraph, mask: u64) -> Vec<EdgeId> {
    let inside = |v: Vertex| mask >> (v - 1) & 1 == 1;
    let mut cut: Vec<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| inside(e.u) != inside(e.v))
        .map(|e| e.id)
        .collect();
    cut.sort_unstable();
    cut
}

/// Minimum size of a non-empty `δ(X) Δ Σ'` with `τ(X) = α'`, over every `X`
/// and both `(Σ', α') ∈ {(Σ, α), (∅, 0)}`.
pub fn dim_cogirth(inst: &EvenCutInstance) -> Result<ExtNat, TooLarge> {
    let n = inst.graph.n();
    guard("vertex count", n)?;
    let mut best = ExtNat::INF;
    for mask in 0u64..1 << n {
        let tau: Parity = (1..=n)
            .filter(|v| mask >> (v - 1) & 1 == 1)
            .map(|v| inst.tau[v - 1])
            .sum();
        let cut: BTreeSet<EdgeId> = cut_of(&inst.graph, mask).into_iter().collect();
        if tau.is_zero() && !cut.is_empty() {
            best = best.min(ExtNat::finite(cut.len() as u64));
        }
        if tau == inst.alpha {
            let set = cut.symmetric_difference(&inst.sigma).count();
            if set > 0 {
                best = best.min(ExtNat::finite(set as u64));
            }
        }
    }
    Ok(best)
}

/// One-sided binomial test of `H0: p >= p0` against `p < p0`. Passes unless
/// observing at most `successes` in `trials` has probability below `level`.
pub fn binomial_at_least(successes: u64, trials: u64, p0: f64, level: f64) -> bool {
    lower_tail(successes, trials, p0) >= level
}

/// `P(X <= successes)` for `X ~ Bin(trials, p0)`.
pub fn lower_tail(successes: u64, trials: u64, p0: f64) -> f64 {
    Binomial::new(p0, trials)
        .expect("p0 lies in [0, 1]")
        .cdf(successes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeLabeling;

    fn pg(n: usize, edges: &[(usize, usize, u32)], t: u32) -> ParityGraph {
        let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.0, e.1)).collect();
        let g = MultiGraph::from_pairs(n, &pairs).unwrap();
        let gamma = EdgeLabeling::from_vec(&g, edges.iter().map(|e| Parity(e.2)).collect());
        ParityGraph::new(g, t, gamma).unwrap()
    }

    #[test]
    fn walk_dp() {
        let tri = pg(3, &[(1, 2, 1), (2, 3, 0), (3, 1, 0)], 1);
        assert_eq!(parity_walk(&tri, Parity(0), 1, 2), ExtNat::finite(2));
        assert_eq!(parity_walk(&tri, Parity(1), 1, 2), ExtNat::finite(1));
        assert_eq!(parity_walk(&tri, Parity(1), 1, 1), ExtNat::finite(3));
        let edge = pg(2, &[(1, 2, 1)], 1);
        assert_eq!(parity_walk(&edge, Parity(0), 1, 2), ExtNat::INF);
    }

    #[test]
    fn subsets() {
        let tri = pg(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)], 1);
        assert_eq!(parity_cycle(&tri, Parity(1)).unwrap(), ExtNat::finite(3));
        assert_eq!(parity_cycle(&tri, Parity(0)).unwrap(), ExtNat::ZERO);
        let t = BTreeSet::from([1, 2]);
        assert_eq!(parity_join(&tri, &t, Parity(1)).unwrap(), ExtNat::finite(1));
        assert_eq!(parity_join(&tri, &t, Parity(0)).unwrap(), ExtNat::finite(2));
    }

    #[test]
    fn matchings() {
        let g = MultiGraph::from_pairs(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let w = EdgeLabeling::from_vec(&g, vec![1, 2, 2, 3]);
        let p = EdgeLabeling::from_vec(&g, vec![Parity(1), Parity(0), Parity(0), Parity(0)]);
        let i = MatchingInstance::new(g.clone(), 1, w.clone(), p.clone(), Parity(0)).unwrap();
        assert_eq!(min_parity_matching(&i), ExtNat::finite(5));
        let i = MatchingInstance::new(g, 1, w, p, Parity(1)).unwrap();
        assert_eq!(min_parity_matching(&i), ExtNat::finite(3));
    }

    #[test]
    fn cuts() {
        let g = MultiGraph::from_pairs(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
        let inst = SetEvenCutInstance::new(g.clone(), vec![]).unwrap();
        assert_eq!(set_even_cut(&inst).unwrap().unwrap().0, 2);
        let inst = SetEvenCutInstance::new(g, vec![BTreeSet::from([2, 4])]).unwrap();
        assert_eq!(set_even_cut(&inst).unwrap().unwrap().0, 3);
    }

    #[test]
    fn dim_single_loop() {
        let g = MultiGraph::from_pairs(1, &[(1, 1)]).unwrap();
        let inst =
            EvenCutInstance::new(g, 0, vec![Parity(0)], BTreeSet::from([0]), Parity(0)).unwrap();
        assert_eq!(dim_cogirth(&inst).unwrap(), ExtNat::finite(1));
    }

    #[test]
    fn binomial() {
        assert!(binomial_at_least(75, 100, 0.75, 0.01));
        assert!(!binomial_at_least(50, 100, 0.75, 0.01));
        assert!((lower_tail(10, 10, 0.5) - 1.0).abs() < 1e-12);
    }
}
