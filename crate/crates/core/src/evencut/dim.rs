//! The dimensional variant `(G, τ, Σ, α)`.
//!
//! A cocycle is a non-empty set `δ(X) Δ Σ'` with `(Σ', α')` either `(Σ, α)`
//! or `(∅, 0)` and `τ(X) = α'`. Equivalently it is a cocycle of the matroid
//! of the matrix with rows `[σ | α]` and `[A(G) | B]` after contracting the
//! `t` label columns, where row `v` of `B` is `τ(v)`.

use std::collections::BTreeSet;

use rand::Rng;

use super::{
    base_case_size, repetitions, ContractionOptions, CutResult, EvenCutError, SigmaChoice,
};
use crate::gf2::{contract_delete, rank, solve_left, Gf2Matrix, Gf2Vector, MatroidRep};
use crate::graph::{EdgeId, GraphError, MultiGraph, UnionFind, Vertex};
use crate::parity::{Parity, MAX_PARITY_DIM};
use crate::seed::{derive_seed, rng_from_seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCutInstance {
    pub graph: MultiGraph,
    pub t: u32,
    /// `tau[v - 1]` is the label of vertex `v`.
    pub tau: Vec<Parity>,
    pub sigma: BTreeSet<EdgeId>,
    pub alpha: Parity,
}

impl EvenCutInstance {
    pub fn new(
        graph: MultiGraph,
        t: u32,
        tau: Vec<Parity>,
        sigma: BTreeSet<EdgeId>,
        alpha: Parity,
    ) -> Result<Self, EvenCutError> {
        if t > MAX_PARITY_DIM {
            return Err(EvenCutError::TooLarge {
                t,
                cap: MAX_PARITY_DIM,
            });
        }
        if tau.len() != graph.n() {
            return Err(EvenCutError::TauLength {
                got: tau.len(),
                n: graph.n(),
            });
        }
        let limit = if t == 32 { u32::MAX } else { (1u32 << t) - 1 };
        if let Some(p) = tau.iter().chain([&alpha]).find(|p| p.0 > limit) {
            return Err(EvenCutError::ParityWidth(p.0));
        }
        if let Some(&e) = sigma.iter().find(|&&e| graph.edge(e).is_none()) {
            return Err(EvenCutError::UnknownSigmaEdge(e));
        }
        Ok(Self {
            graph,
            t,
            tau,
            sigma,
            alpha,
        })
    }

    pub fn tau_of(&self, v: Vertex) -> Parity {
        self.tau[v - 1]
    }

    pub fn tau_sum(&self, side: &[Vertex]) -> Parity {
        side.iter().map(|&v| self.tau_of(v)).sum()
    }

    /// The `(1 + n) x (m + t)` matrix `[[σ, α], [A(G), B]]`; columns are the
    /// edges in graph order followed by the `t` label columns.
    pub fn incidence_form(&self) -> Gf2Matrix {
        let (n, m, t) = (self.graph.n(), self.graph.m(), self.t as usize);
        let mut a = Gf2Matrix::zeros(1 + n, m + t);
        for (j, e) in self.graph.edges().iter().enumerate() {
            if self.sigma.contains(&e.id) {
                a.set(0, j, true);
            }
            if !e.is_loop() {
                a.set(e.u, j, true);
                a.set(e.v, j, true);
            }
        }
        for i in 0..t {
            a.set(0, m + i, self.alpha.bit(i as u32));
            for v in 1..=n {
                a.set(v, m + i, self.tau_of(v).bit(i as u32));
            }
        }
        a
    }

    /// The matroid whose cocycles are this instance's feasible sets. Its
    /// ground set is the edge ids, in graph order.
    pub fn matroid(&self) -> MatroidRep {
        let m = self.graph.m();
        let rep = MatroidRep::from_matrix(self.incidence_form());
        let labels: Vec<usize> = (m..m + self.t as usize).collect();
        let contracted = contract_delete(&rep, &labels, &[]).expect("label columns exist");
        let ground = self.graph.edge_ids().map(|id| id.to_string()).collect();
        MatroidRep::new(contracted.matrix().clone(), ground).expect("ids are distinct")
    }
}

/// True iff some non-empty cocycle exists.
pub fn dim_feasible(inst: &EvenCutInstance) -> bool {
    let a = inst.incidence_form();
    let m = inst.graph.m();
    let labels: Vec<usize> = (m..a.ncols()).collect();
    rank(&a) > rank(&a.select_columns(&labels))
}

/// Recovers `(Σ', X)` for a candidate cocycle given by edge ids, or `None`
/// if the set is empty or not a cocycle.
pub fn lift_cocycle(inst: &EvenCutInstance, edges: &[EdgeId]) -> Option<CutResult> {
    let mut ids: Vec<EdgeId> = edges.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.is_empty() {
        return None;
    }
    let target = inst
        .graph
        .edge_vector(&ids)
        .ok()?
        .concat(&Gf2Vector::zeros(inst.t as usize));
    let x = solve_left(&inst.incidence_form(), &target)?;
    let side: Vec<Vertex> = (1..=inst.graph.n()).filter(|&v| x.get(v)).collect();
    let choice = if x.get(0) {
        SigmaChoice::Sigma
    } else {
        SigmaChoice::Empty
    };
    Some(CutResult {
        size: ids.len(),
        edges: ids,
        side,
        choice: Some(choice),
    })
}

/// Contracts the non-loop edge `e`. When `e ∈ Σ` the first end `x` of the
/// edge record is used: `Σ' = Σ Δ δ(x)` and `α' = α + τ(x)`.
pub fn dim_contract(inst: &EvenCutInstance, e: EdgeId) -> Result<EvenCutInstance, EvenCutError> {
    let edge = *inst.graph.edge(e).ok_or(GraphError::UnknownEdge(e))?;
    let (g, map) = inst.graph.contract_edge(e)?;
    let mut tau = vec![Parity::ZERO; g.n()];
    for v in inst.graph.vertices() {
        tau[map[v] - 1] += inst.tau_of(v);
    }
    let mut sigma = inst.sigma.clone();
    let mut alpha = inst.alpha;
    if inst.sigma.contains(&e) {
        let x = edge.u;
        for f in inst.graph.edges() {
            if !f.is_loop() && (f.u == x || f.v == x) && !sigma.remove(&f.id) {
                sigma.insert(f.id);
            }
        }
        alpha += inst.tau_of(x);
    }
    sigma.remove(&e);
    Ok(EvenCutInstance {
        graph: g,
        t: inst.t,
        tau,
        sigma,
        alpha,
    })
}

/// Outcome of reducing an instance to a connected one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectivityReduction {
    /// Every edge is a loop; the optimum is known directly (`None` = none).
    Direct(Option<CutResult>),
    /// Connected instances whose minimum cogirth is the input's cogirth.
    Connected(Vec<EvenCutInstance>),
}

/// Glues one vertex of every component into a single vertex and removes the
/// labels contributed by the components other than the first.
///
/// After gluing, every component except the first leaves behind an isolated
/// vertex whose label is the label sum of that component. Let `W` be the span
/// of those sums. A set `λΣ Δ δ(X)` is then a cocycle iff `τ(X) + λα ∈ W`, so
/// the isolated vertices are dropped and all labels are taken modulo `W`.
/// The result has the same edge ids and `t' = t - dim W`.
pub fn connectivity_reduce(inst: &EvenCutInstance) -> ConnectivityReduction {
    let g = &inst.graph;
    if g.edges().iter().all(|e| e.is_loop()) {
        return ConnectivityReduction::Direct(all_loops_answer(inst));
    }
    let comp = g.components();
    let count = comp.iter().skip(1).max().map_or(0, |&c| c + 1);
    if count <= 1 {
        return ConnectivityReduction::Connected(vec![inst.clone()]);
    }
    let mut rep = vec![0; count];
    let mut comp_tau = vec![Parity::ZERO; count];
    for v in g.vertices().rev() {
        rep[comp[v]] = v;
        comp_tau[comp[v]] += inst.tau_of(v);
    }
    let quotient = Quotient::new(&comp_tau[1..], inst.t);
    // Vertices 2.. of the glued graph are the non-representatives, in order.
    let mut map = vec![0; g.n() + 1];
    let mut next = 2;
    for v in g.vertices() {
        if rep[comp[v]] == v {
            map[v] = 1;
        } else {
            map[v] = next;
            next += 1;
        }
    }
    let n = next - 1;
    let mut glued = MultiGraph::new(n);
    for e in g.edges() {
        glued
            .add_edge(e.id, map[e.u], map[e.v])
            .expect("map stays in range");
    }
    let mut tau = vec![Parity::ZERO; n];
    for v in g.vertices() {
        tau[map[v] - 1] += inst.tau_of(v);
    }
    let tau = tau.into_iter().map(|p| quotient.project(p)).collect();
    let reduced = EvenCutInstance {
        graph: glued,
        t: quotient.dim(),
        tau,
        sigma: inst.sigma.clone(),
        alpha: quotient.project(inst.alpha),
    };
    ConnectivityReduction::Connected(vec![reduced])
}

/// With only loops every cut is empty, so the only candidate is `Σ` itself,
/// available when `α` is a sum of vertex labels.
fn all_loops_answer(inst: &EvenCutInstance) -> Option<CutResult> {
    if inst.sigma.is_empty() {
        return None;
    }
    lift_cocycle(inst, &inst.sigma.iter().copied().collect::<Vec<_>>())
}

/// Projection `GF(2)^t -> GF(2)^t / W` in reduced coordinates.
struct Quotient {
    /// Echelon basis of `W` as (pivot bit, vector).
    basis: Vec<(u32, Parity)>,
    /// Coordinates kept after reduction, in increasing order.
    kept: Vec<u32>,
}

impl Quotient {
    fn new(span: &[Parity], t: u32) -> Self {
        let mut basis: Vec<(u32, Parity)> = Vec::new();
        for &p in span {
            let mut r = p;
            for &(bit, b) in &basis {
                if r.bit(bit) {
                    r += b;
                }
            }
            if r.is_zero() {
                continue;
            }
            let bit = 31 - r.0.leading_zeros();
            for entry in basis.iter_mut() {
                if entry.1.bit(bit) {
                    entry.1 += r;
                }
            }
            basis.push((bit, r));
        }
        let kept = (0..t)
            .filter(|i| basis.iter().all(|&(b, _)| b != *i))
            .collect();
        Self { basis, kept }
    }

    fn dim(&self) -> u32 {
        self.kept.len() as u32
    }

    fn project(&self, p: Parity) -> Parity {
        let mut r = p;
        for &(bit, b) in &self.basis {
            if r.bit(bit) {
                r += b;
            }
        }
        self.kept
            .iter()
            .enumerate()
            .fold(Parity::ZERO, |acc, (i, &bit)| {
                acc.with_bit(i as u32, r.bit(bit))
            })
    }
}

/// Exact optimum by enumerating every `X` and both choices of `(Σ', α')`.
pub fn dim_exhaustive(inst: &EvenCutInstance) -> Option<CutResult> {
    let (_, edges) = Contracted::new(inst).exhaustive()?;
    lift_cocycle(inst, &edges)
}

/// One run of the contraction algorithm on a feasible connected instance.
pub fn dim_random_contraction<R: Rng>(
    inst: &EvenCutInstance,
    rng: &mut R,
    opts: ContractionOptions,
) -> Result<CutResult, EvenCutError> {
    check(inst, opts)?;
    let edges = run(inst, rng);
    Ok(lift_cocycle(inst, &edges).expect("contraction only yields cocycles"))
}

/// Best of `c·n^4` runs, run `i` seeded by `derive_seed(seed, i)`. An
/// instance at base-case size is solved exactly by one run.
pub fn dim_min_cocycle(
    inst: &EvenCutInstance,
    c: u64,
    seed: u64,
    opts: ContractionOptions,
) -> Result<CutResult, EvenCutError> {
    check(inst, opts)?;
    let reps = if inst.graph.n() <= base_case_size(inst.t) {
        1
    } else {
        repetitions(c, inst.graph.n())
    };
    let mut best: Option<Vec<EdgeId>> = None;
    for i in 0..reps {
        let mut rng = rng_from_seed(derive_seed(seed, i));
        let edges = run(inst, &mut rng);
        if best
            .as_ref()
            .is_none_or(|b| (edges.len(), &edges) < (b.len(), b))
        {
            best = Some(edges);
        }
    }
    let edges = best.expect("at least one repetition");
    Ok(lift_cocycle(inst, &edges).expect("contraction only yields cocycles"))
}

fn check(inst: &EvenCutInstance, opts: ContractionOptions) -> Result<(), EvenCutError> {
    if inst.t > opts.t_cap {
        return Err(EvenCutError::TooLarge {
            t: inst.t,
            cap: opts.t_cap,
        });
    }
    if !inst.graph.is_connected() {
        return Err(EvenCutError::Disconnected);
    }
    if !dim_feasible(inst) {
        return Err(EvenCutError::Infeasible);
    }
    Ok(())
}

/// One contraction run; returns the sorted edge ids of the cocycle found.
fn run<R: Rng>(inst: &EvenCutInstance, rng: &mut R) -> Vec<EdgeId> {
    let mut state = Contracted::new(inst);
    let limit = base_case_size(inst.t);
    loop {
        state.drop_loops();
        if state.vertices <= limit || state.alive.is_empty() {
            return state
                .exhaustive()
                .expect("feasibility survives contraction")
                .1;
        }
        let pick = state.alive[rng.gen_range(0..state.alive.len())];
        state.contract(pick);
    }
}

/// Contraction state over the original numbering. Contracted edges leave
/// the ground set; edges made parallel to them become loops and stay.
struct Contracted<'a> {
    inst: &'a EvenCutInstance,
    uf: UnionFind,
    tau: Vec<Parity>,
    sigma: Vec<bool>,
    alpha: Parity,
    removed: Vec<bool>,
    alive: Vec<usize>,
    vertices: usize,
}

impl<'a> Contracted<'a> {
    fn new(inst: &'a EvenCutInstance) -> Self {
        let n = inst.graph.n();
        let mut tau = vec![Parity::ZERO; n + 1];
        tau[1..].copy_from_slice(&inst.tau);
        Self {
            inst,
            uf: UnionFind::new(n + 1),
            tau,
            sigma: inst
                .graph
                .edges()
                .iter()
                .map(|e| inst.sigma.contains(&e.id))
                .collect(),
            alpha: inst.alpha,
            removed: vec![false; inst.graph.m()],
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

    /// Contracts edge position `pos`; `alive` must hold only non-loops.
    fn contract(&mut self, pos: usize) {
        let (x, y) = self.ends(pos);
        if self.sigma[pos] {
            for i in 0..self.alive.len() {
                let p = self.alive[i];
                let (a, b) = self.ends(p);
                if (a == x) != (b == x) {
                    self.sigma[p] ^= true;
                }
            }
            self.alpha += self.tau[x];
        }
        let merged = self.tau[x] + self.tau[y];
        let root = self.uf.union(x, y).expect("not a loop");
        self.tau[root] = merged;
        self.removed[pos] = true;
        self.vertices -= 1;
    }

    /// Minimum over all `X` of the current contracted instance.
    fn exhaustive(mut self) -> Option<(usize, Vec<EdgeId>)> {
        let n = self.inst.graph.n();
        let roots: Vec<usize> = (1..=n).filter(|&v| self.uf.find(v) == v).collect();
        let k = roots.len();
        assert!(k < 64, "exhaustive search over {k} vertices");
        let mut index = vec![usize::MAX; n + 1];
        for (i, &r) in roots.iter().enumerate() {
            index[r] = i;
        }
        // (id, end a, end b, in Σ'), sorted by id; loops use a == b.
        let mut edges: Vec<(EdgeId, usize, usize, bool)> = Vec::new();
        for pos in 0..self.inst.graph.m() {
            if self.removed[pos] {
                continue;
            }
            let (a, b) = self.ends(pos);
            edges.push((
                self.inst.graph.edges()[pos].id,
                index[a],
                index[b],
                self.sigma[pos],
            ));
        }
        edges.sort_unstable();
        let labels: Vec<Parity> = roots.iter().map(|&r| self.tau[r]).collect();
        let alpha = self.alpha;
        let mut best: Option<(usize, Vec<EdgeId>)> = None;
        let mut consider = |mask: u64, lambda: bool| {
            let member = |&(_, a, b, s): &(EdgeId, usize, usize, bool)| {
                ((mask >> a ^ mask >> b) & 1 == 1) != (lambda && s)
            };
            let size = edges.iter().filter(|e| member(e)).count();
            if size == 0 || best.as_ref().is_some_and(|b| size > b.0) {
                return;
            }
            let ids: Vec<EdgeId> = edges.iter().filter(|e| member(e)).map(|e| e.0).collect();
            if best.as_ref().is_none_or(|b| (size, &ids) < (b.0, &b.1)) {
                best = Some((size, ids));
            }
        };
        let mut tau = Parity::ZERO;
        let mut mask = 0u64;
        for step in 0u64..(1u64 << k) {
            if step > 0 {
                let bit = step.trailing_zeros() as usize;
                mask ^= 1 << bit;
                tau += labels[bit];
            }
            if tau.is_zero() {
                consider(mask, false);
            }
            if tau == alpha {
                consider(mask, true);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::cogirth_oracle;
    use crate::ExtNat;

    fn inst(
        n: usize,
        pairs: &[(usize, usize)],
        t: u32,
        tau: &[u32],
        sigma: &[EdgeId],
        alpha: u32,
    ) -> EvenCutInstance {
        EvenCutInstance::new(
            MultiGraph::from_pairs(n, pairs).unwrap(),
            t,
            tau.iter().map(|&p| Parity(p)).collect(),
            sigma.iter().copied().collect(),
            Parity(alpha),
        )
        .unwrap()
    }

    fn optimum(i: &EvenCutInstance) -> ExtNat {
        cogirth_oracle(&i.matroid()).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        assert!(!dim_feasible(&inst(1, &[], 0, &[0], &[], 0)));
        assert!(dim_feasible(&inst(1, &[(1, 1)], 0, &[0], &[0], 0)));
        assert!(dim_feasible(&inst(
            3,
            &[(1, 2), (2, 3)],
            1,
            &[1, 0, 1],
            &[],
            0
        )));
    }

    #[test]
    fn contract_outside_sigma() {
        let i = inst(3, &[(1, 2), (2, 3)], 1, &[1, 1, 0], &[1], 1);
        let c = dim_contract(&i, 0).unwrap();
        assert_eq!(c.sigma, [1].into_iter().collect());
        assert_eq!(c.alpha, Parity(1));
        assert_eq!(c.tau, vec![Parity(0), Parity(0)]);
    }

    #[test]
    fn contract_pendant_sigma_edge() {
        // δ(1) = {e0}: Σ' = Σ - {e0}, α' = α + τ(1).
        let i = inst(3, &[(1, 2), (2, 3)], 1, &[1, 0, 0], &[0, 1], 0);
        let c = dim_contract(&i, 0).unwrap();
        assert_eq!(c.sigma, [1].into_iter().collect());
        assert_eq!(c.alpha, Parity(1));
    }

    #[test]
    fn contraction_preserves_the_matroid_minor() {
        let i = inst(
            4,
            &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 2)],
            2,
            &[1, 2, 3, 0],
            &[0, 4, 5],
            2,
        );
        for e in [0, 1, 4] {
            let c = dim_contract(&i, e).unwrap();
            let pos = i.graph.position(e).unwrap();
            let minor = contract_delete(&i.matroid(), &[pos], &[]).unwrap();
            // Same cocycle set: row spaces agree column by column.
            let a = minor.matrix();
            let b = c.matroid();
            assert_eq!(minor.ground(), b.ground());
            assert_eq!(rank(a), rank(b.matrix()));
            assert_eq!(rank(&a.vstack(b.matrix()).unwrap()), rank(a));
        }
    }

    #[test]
    fn triangle_min_cocycle_is_two() {
        let i = inst(3, &[(1, 2), (2, 3), (1, 3)], 0, &[0, 0, 0], &[], 0);
        let r = dim_min_cocycle(&i, 1, 0, ContractionOptions::default()).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.choice, Some(SigmaChoice::Empty));
    }

    #[test]
    fn sigma_itself_can_be_optimal() {
        // τ(V) = α with δ(V) = ∅ makes Σ a cocycle; every cut costs more.
        let pairs = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (1, 3),
            (2, 4),
            (3, 5),
            (1, 1),
        ];
        let i = inst(5, &pairs, 1, &[1, 0, 0, 0, 0], &[8], 1);
        let r = dim_min_cocycle(&i, 1, 5, ContractionOptions::default()).unwrap();
        assert_eq!(r.edges, vec![8]);
        assert_eq!(optimum(&i), ExtNat::finite(1));
    }

    #[test]
    fn exhaustive_matches_oracle_on_disconnected_input() {
        let i = inst(
            5,
            &[(1, 2), (1, 2), (4, 5), (3, 3)],
            1,
            &[1, 0, 1, 1, 0],
            &[2, 3],
            1,
        );
        let r = dim_exhaustive(&i).map(|r| r.size as u64);
        assert_eq!(ExtNat::from(r), optimum(&i));
    }

    #[test]
    fn reduction_on_connected_input_is_identity() {
        let i = inst(3, &[(1, 2), (2, 3)], 1, &[1, 0, 1], &[0], 0);
        assert_eq!(
            connectivity_reduce(&i),
            ConnectivityReduction::Connected(vec![i.clone()])
        );
    }

    #[test]
    fn reduction_with_zero_labels_keeps_t() {
        let i = inst(4, &[(1, 2), (3, 4)], 1, &[0, 0, 0, 0], &[0], 1);
        match connectivity_reduce(&i) {
            ConnectivityReduction::Connected(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].t, 1);
                assert_eq!(v[0].graph.n(), 3);
                assert!(v[0].graph.is_connected());
                assert_eq!(optimum(&v[0]), optimum(&i));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduction_counterexample_to_beta_family() {
        // Edge 12 with loops f, g at 1 in Σ, plus an isolated vertex with
        // label 1. The only size-1 cocycle is the cut {e}.
        let i = inst(3, &[(1, 2), (1, 1), (1, 1)], 1, &[1, 1, 1], &[1, 2], 0);
        assert_eq!(optimum(&i), ExtNat::finite(1));
        match connectivity_reduce(&i) {
            ConnectivityReduction::Connected(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(optimum(&v[0]), ExtNat::finite(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn all_loops_are_answered_directly() {
        let i = inst(2, &[(1, 1), (2, 2)], 1, &[1, 0], &[1], 1);
        match connectivity_reduce(&i) {
            ConnectivityReduction::Direct(Some(r)) => {
                assert_eq!(r.edges, vec![1]);
                assert_eq!(r.side, vec![1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let j = inst(2, &[(1, 1)], 1, &[0, 0], &[0], 1);
        assert_eq!(connectivity_reduce(&j), ConnectivityReduction::Direct(None));
        assert_eq!(optimum(&j), ExtNat::INF);
    }

    #[test]
    fn lifted_witness_validates() {
        let i = inst(
            4,
            &[(1, 2), (2, 3), (3, 4), (4, 1)],
            1,
            &[1, 1, 0, 0],
            &[0],
            1,
        );
        let r = dim_exhaustive(&i).unwrap();
        let sigma: Vec<EdgeId> = match r.choice.unwrap() {
            SigmaChoice::Sigma => i.sigma.iter().copied().collect(),
            SigmaChoice::Empty => vec![],
        };
        let alpha = if sigma.is_empty() {
            Parity::ZERO
        } else {
            i.alpha
        };
        assert_eq!(i.tau_sum(&r.side), alpha);
        let cut: BTreeSet<EdgeId> = i.graph.cut(&r.side).into_iter().collect();
        let sym: BTreeSet<EdgeId> = cut
            .symmetric_difference(&sigma.into_iter().collect())
            .copied()
            .collect();
        assert_eq!(sym.into_iter().collect::<Vec<_>>(), r.edges);
    }
}
