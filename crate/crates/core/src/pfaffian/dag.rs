//! Division-free Pfaffian by signed path sums in a layered digraph.
//!
//! The digraph has a source `s`, sinks `t-` and `t+`, and inner vertices
//! `(b, h, c, l)` with `b ∈ {0, 1}`, head `h`, current vertex `c` and layer
//! `l ∈ 0..n`. Every edge goes from layer `l - 1` to layer `l`, so vertex
//! index order is a topological order. With `f(s) = 1` and
//! `f(v) = Σ f(u) wt(uv)` over in-edges, the Pfaffian is `f(t+) - f(t-)`.
//! The edge rules are documented in `docs/dag-rules.md`.
//!
//! The rule table is parameterised so that alternative readings can be
//! built and rejected by comparison with the pairing expansion; only
//! [`DagRules::FROZEN`] is correct.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::GroupRingPoly;
use super::skew::SkewRingMatrix;
use crate::parity::Parity;

/// Sign and layer choices that select one variant of the edge rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DagRules {
    /// Matrix-weighted edges enter odd layers (otherwise even layers).
    pub entry_on_odd_layers: bool,
    /// The sign bit flips on a matrix edge when the previous current vertex
    /// is smaller (otherwise when it is larger).
    pub entry_flip_from_below: bool,
    /// The sign bit flips when an odd current vertex steps up by one.
    pub step_up_flips: bool,
    /// The sign bit flips when a new head is opened.
    pub new_head_flips: bool,
}

impl DagRules {
    pub const FROZEN: DagRules = DagRules {
        entry_on_odd_layers: true,
        entry_flip_from_below: true,
        step_up_flips: true,
        new_head_flips: true,
    };

    /// Every combination of the open choices, the frozen one first.
    pub fn variants() -> Vec<DagRules> {
        let mut out = vec![Self::FROZEN];
        for bits in 0u8..16 {
            let r = DagRules {
                entry_on_odd_layers: bits & 1 == 1,
                entry_flip_from_below: bits & 2 == 2,
                step_up_flips: bits & 4 == 4,
                new_head_flips: bits & 8 == 8,
            };
            if r != Self::FROZEN {
                out.push(r);
            }
        }
        out
    }

    /// A deliberately wrong table, used as a negative control.
    pub fn mutated() -> DagRules {
        DagRules {
            step_up_flips: false,
            ..Self::FROZEN
        }
    }
}

impl Default for DagRules {
    fn default() -> Self {
        Self::FROZEN
    }
}

/// Edge weight: the ring unit or the matrix entry `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Unit,
    Entry(usize, usize),
}

/// A decoded vertex of the digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DagVertex {
    Source,
    SinkMinus,
    SinkPlus,
    Inner {
        b: u8,
        head: usize,
        cur: usize,
        layer: usize,
    },
}

#[derive(Clone, Debug)]
pub struct PfaffianDag {
    n: usize,
    rules: DagRules,
    in_edges: Vec<Vec<(u32, Weight)>>,
}

impl PfaffianDag {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> DagRules {
        self.rules
    }

    pub fn vertex_count(&self) -> usize {
        self.in_edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.in_edges.iter().map(Vec::len).sum()
    }

    pub fn in_edges(&self, v: usize) -> &[(u32, Weight)] {
        &self.in_edges[v]
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink_minus(&self) -> usize {
        2 * self.n.pow(3) + 1
    }

    pub fn sink_plus(&self) -> usize {
        2 * self.n.pow(3) + 2
    }

    pub fn index(&self, b: u8, head: usize, cur: usize, layer: usize) -> usize {
        inner_index(self.n, b, head, cur, layer)
    }

    pub fn vertex(&self, idx: usize) -> DagVertex {
        let n = self.n;
        if idx == 0 {
            return DagVertex::Source;
        }
        if idx == self.sink_minus() {
            return DagVertex::SinkMinus;
        }
        if idx == self.sink_plus() {
            return DagVertex::SinkPlus;
        }
        let r = idx - 1;
        let layer = r / (2 * n * n);
        let r = r % (2 * n * n);
        DagVertex::Inner {
            b: (r / (n * n)) as u8,
            head: (r % (n * n)) / n + 1,
            cur: r % n + 1,
            layer,
        }
    }

    /// Acyclicity by Kahn's algorithm on the explicit edge lists.
    pub fn is_acyclic(&self) -> bool {
        let v = self.vertex_count();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); v];
        let mut indeg = vec![0usize; v];
        for (to, edges) in self.in_edges.iter().enumerate() {
            for &(from, _) in edges {
                out[from as usize].push(to);
                indeg[to] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..v).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(x) = stack.pop() {
            seen += 1;
            for &y in &out[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        seen == v
    }

    /// Number of edges on a longest directed path. Requires acyclicity.
    pub fn longest_path(&self) -> usize {
        // Every edge increases the index, so one forward sweep suffices.
        let mut best = vec![0usize; self.vertex_count()];
        for to in 0..self.vertex_count() {
            for &(from, _) in &self.in_edges[to] {
                assert!((from as usize) < to, "edge against index order");
                best[to] = best[to].max(best[from as usize] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

fn inner_index(n: usize, b: u8, head: usize, cur: usize, layer: usize) -> usize {
    1 + layer * 2 * n * n + b as usize * n * n + (head - 1) * n + (cur - 1)
}

/// Builds the digraph for order `n` under `rules`.
pub fn build_dag_with(n: usize, rules: DagRules) -> PfaffianDag {
    let count = 2 * n.pow(3) + 3;
    let mut in_edges: Vec<Vec<(u32, Weight)>> = vec![Vec::new(); count];
    let idx = |b: u8, h: usize, c: usize, l: usize| inner_index(n, b, h, c, l) as u32;
    let flip = |b: u8, yes: bool| if yes { 1 - b } else { b };
    for layer in 0..n {
        let entry_layer = layer >= 1 && (layer % 2 == 1) == rules.entry_on_odd_layers;
        let unit_layer = layer >= 2 && layer % 2 == 0;
        for b in 0..2u8 {
            for head in 1..=n {
                for cur in 1..=n {
                    let to = idx(b, head, cur, layer) as usize;
                    let edges = &mut in_edges[to];
                    if layer == 0 && b == 0 && head == cur && head % 2 == 1 {
                        edges.push((0, Weight::Unit));
                    }
                    if entry_layer && cur > head {
                        for a in (1..=n).filter(|&a| a != cur) {
                            let below = a < cur;
                            let from_b = flip(b, below == rules.entry_flip_from_below);
                            let w = if below {
                                Weight::Entry(a, cur)
                            } else {
                                Weight::Entry(cur, a)
                            };
                            edges.push((idx(from_b, head, a, layer - 1), w));
                        }
                    }
                    if !unit_layer {
                        continue;
                    }
                    if cur % 2 == 0 && head + 1 < cur {
                        let from_b = flip(b, rules.step_up_flips);
                        edges.push((idx(from_b, head, cur - 1, layer - 1), Weight::Unit));
                    }
                    if cur % 2 == 1 && head < cur {
                        edges.push((idx(b, head, cur + 1, layer - 1), Weight::Unit));
                    }
                    if cur % 2 == 1 && head == cur {
                        let from_b = flip(b, rules.new_head_flips);
                        for a in 1..head {
                            edges.push((idx(from_b, a, a + 1, layer - 1), Weight::Unit));
                        }
                    }
                }
            }
        }
    }
    if n > 0 {
        for a in (1..n).step_by(2) {
            in_edges[count - 2].push((idx(0, a, a + 1, n - 1), Weight::Unit));
            in_edges[count - 1].push((idx(1, a, a + 1, n - 1), Weight::Unit));
        }
    }
    PfaffianDag { n, rules, in_edges }
}

/// The digraph for the order of `d` under the frozen rules.
pub fn build_dag(d: &SkewRingMatrix) -> PfaffianDag {
    build_dag_with(d.n(), DagRules::FROZEN)
}

thread_local! {
    static DAG_CACHE: RefCell<HashMap<(usize, DagRules), Rc<PfaffianDag>>> =
        RefCell::new(HashMap::new());
}

fn cached_dag(n: usize, rules: DagRules) -> Rc<PfaffianDag> {
    DAG_CACHE.with(|c| {
        c.borrow_mut()
            .entry((n, rules))
            .or_insert_with(|| Rc::new(build_dag_with(n, rules)))
            .clone()
    })
}

/// Diagnostics from one evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagStats {
    /// Whether the machine-integer pass overflowed and was redone.
    pub used_bigint: bool,
    /// Largest absolute coefficient of any `f(v)`.
    pub max_abs_coefficient: BigInt,
}

/// `c^(n+1) (n+1)^n` with `c` the largest entry norm: an a-priori bound on
/// every coefficient produced during evaluation.
pub fn coefficient_bound(d: &SkewRingMatrix) -> BigInt {
    let n = d.n() as u32;
    num_traits::pow(d.max_entry_l1(), (n + 1) as usize) * BigInt::from(n + 1).pow(n)
}

/// Pfaffian of `d` via the frozen digraph. Zero for odd order, one for the
/// empty matrix.
pub fn pfaffian_dag(d: &SkewRingMatrix) -> GroupRingPoly {
    pfaffian_dag_with(d, DagRules::FROZEN).0
}

pub fn pfaffian_dag_with(d: &SkewRingMatrix, rules: DagRules) -> (GroupRingPoly, DagStats) {
    let n = d.n();
    let trivial = |p: GroupRingPoly| {
        (
            p.clone(),
            DagStats {
                used_bigint: false,
                max_abs_coefficient: p.max_abs_coefficient(),
            },
        )
    };
    if n == 0 {
        return trivial(GroupRingPoly::one(d.t()));
    }
    if n % 2 == 1 {
        return trivial(GroupRingPoly::zero(d.t()));
    }
    let dag = cached_dag(n, rules);
    let entries = EntryTable::new(d);
    if let Some((p, max)) = evaluate::<i128>(&dag, &entries) {
        return (
            p,
            DagStats {
                used_bigint: false,
                max_abs_coefficient: max,
            },
        );
    }
    let (p, max) = evaluate::<BigInt>(&dag, &entries).expect("big integers do not overflow");
    (
        p,
        DagStats {
            used_bigint: true,
            max_abs_coefficient: max,
        },
    )
}

/// Coefficient arithmetic used by the sweep; `false` signals overflow.
trait Coeff: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add_assign_checked(&mut self, x: &Self) -> bool;
    fn add_product_checked(&mut self, a: &Self, b: &Self) -> bool;
    fn abs_big(&self) -> BigInt;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add_assign_checked(&mut self, x: &Self) -> bool {
        match self.checked_add(*x) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn add_product_checked(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn abs_big(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add_assign_checked(&mut self, x: &Self) -> bool {
        *self += x;
        true
    }
    fn add_product_checked(&mut self, a: &Self, b: &Self) -> bool {
        *self += a * b;
        true
    }
    fn abs_big(&self) -> BigInt {
        self.abs()
    }
}

/// Entries as sparse term lists `(β, degree, coefficient)`.
struct EntryTable {
    n: usize,
    t: u32,
    terms: Vec<Vec<(u32, usize, BigInt)>>,
    max_degree: usize,
}

impl EntryTable {
    fn new(d: &SkewRingMatrix) -> Self {
        let n = d.n();
        let mut terms = vec![Vec::new(); n * n];
        let mut max_degree = 0;
        for i in 1..=n {
            for j in 1..=n {
                terms[(i - 1) * n + (j - 1)] = d
                    .get(i, j)
                    .terms()
                    .map(|(b, deg, c)| {
                        max_degree = max_degree.max(deg as usize);
                        (b.0, deg as usize, c.clone())
                    })
                    .collect();
            }
        }
        Self {
            n,
            t: d.t(),
            terms,
            max_degree,
        }
    }

    fn get(&self, i: usize, j: usize) -> &[(u32, usize, BigInt)] {
        &self.terms[(i - 1) * self.n + (j - 1)]
    }
}

/// One layer of values: per vertex a dense `[β][degree]` block plus the
/// occupied degree range `lo..hi` (empty when `lo >= hi`).
struct Layer<C> {
    data: Vec<C>,
    range: Vec<(usize, usize)>,
}

impl<C: Coeff> Layer<C> {
    fn new(vertices: usize, block: usize) -> Self {
        Self {
            data: vec![C::zero(); vertices * block],
            range: vec![(usize::MAX, 0); vertices],
        }
    }

    fn clear(&mut self) {
        for x in self.data.iter_mut() {
            *x = C::zero();
        }
        for r in self.range.iter_mut() {
            *r = (usize::MAX, 0);
        }
    }
}

fn evaluate<C: Coeff>(dag: &PfaffianDag, entries: &EntryTable) -> Option<(GroupRingPoly, BigInt)> {
    let n = dag.n();
    let classes = 1usize << entries.t;
    let entry_layers = (1..n)
        .filter(|l| (l % 2 == 1) == dag.rules().entry_on_odd_layers)
        .count();
    let width = entry_layers * entries.max_degree + 1;
    let block = classes * width;
    let per_layer = 2 * n * n;

    let mut coef: Vec<Vec<(usize, usize, C)>> = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let mut list = Vec::new();
            for (b, d, c) in entries.get(i, j) {
                list.push((*b as usize, *d, C::from_big(c)?));
            }
            coef.push(list);
        }
    }

    let mut prev: Layer<C> = Layer::new(per_layer, block);
    let mut cur: Layer<C> = Layer::new(per_layer, block);
    let mut max_abs = BigInt::one();
    for layer in 0..n {
        cur.clear();
        let base = 1 + layer * per_layer;
        for pos in 0..per_layer {
            let to = base + pos;
            let (mut lo, mut hi) = (usize::MAX, 0usize);
            let out = &mut cur.data[pos * block..(pos + 1) * block];
            for &(from, w) in dag.in_edges(to) {
                let from = from as usize;
                if from == 0 {
                    out[0].add_assign_checked(&one::<C>());
                    lo = 0;
                    hi = hi.max(1);
                    continue;
                }
                let fpos = from - (base - per_layer);
                let (flo, fhi) = prev.range[fpos];
                if flo >= fhi {
                    continue;
                }
                let src = &prev.data[fpos * block..(fpos + 1) * block];
                match w {
                    Weight::Unit => {
                        for beta in 0..classes {
                            for d in flo..fhi {
                                let v = &src[beta * width + d];
                                if !v.is_zero() && !out[beta * width + d].add_assign_checked(v) {
                                    return None;
                                }
                            }
                        }
                        lo = lo.min(flo);
                        hi = hi.max(fhi);
                    }
                    Weight::Entry(i, j) => {
                        let terms = &coef[(i - 1) * n + (j - 1)];
                        if terms.is_empty() {
                            continue;
                        }
                        for (eb, ed, ec) in terms {
                            for beta in 0..classes {
                                let tb = beta ^ eb;
                                for d in flo..fhi {
                                    let v = &src[beta * width + d];
                                    if !v.is_zero()
                                        && !out[tb * width + d + ed].add_product_checked(v, ec)
                                    {
                                        return None;
                                    }
                                }
                            }
                            lo = lo.min(flo + ed);
                            hi = hi.max(fhi + ed);
                        }
                    }
                }
            }
            if lo < hi {
                for beta in 0..classes {
                    for v in &out[beta * width + lo..beta * width + hi] {
                        if !v.is_zero() {
                            let a = v.abs_big();
                            if a > max_abs {
                                max_abs = a;
                            }
                        }
                    }
                }
            }
            cur.range[pos] = (lo, hi);
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    let base = 1 + (n - 1) * per_layer;
    let mut result = GroupRingPoly::zero(entries.t);
    for (sink, sign) in [(dag.sink_plus(), 1i32), (dag.sink_minus(), -1i32)] {
        for &(from, _) in dag.in_edges(sink) {
            let fpos = from as usize - base;
            let (flo, fhi) = prev.range[fpos];
            for beta in 0..classes {
                for d in flo..fhi {
                    let v = &prev.data[fpos * block + beta * width + d];
                    if !v.is_zero() {
                        result.add_term(Parity(beta as u32), d as u64, v.to_big() * sign);
                    }
                }
            }
        }
    }
    Some((result, max_abs))
}

fn one<C: Coeff>() -> C {
    C::from_big(&BigInt::one()).expect("one fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfaffian::skew::pfaffian_naive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_scalar(n: usize, rng: &mut ChaCha8Rng) -> SkewRingMatrix {
        let mut d = SkewRingMatrix::zero(n, 0);
        for i in 1..=n {
            for j in i + 1..=n {
                d.set(i, j, GroupRingPoly::constant(0, rng.gen_range(-5..=5)))
                    .unwrap();
            }
        }
        d
    }

    #[test]
    fn vertex_count_and_shape() {
        for n in [2, 4, 6] {
            let dag = build_dag_with(n, DagRules::FROZEN);
            assert_eq!(dag.vertex_count(), 2 * n * n * n + 3);
            assert!(dag.max_in_degree() <= n);
            assert!(dag.longest_path() <= n + 1);
            assert!(dag.is_acyclic());
        }
    }

    #[test]
    fn index_round_trip() {
        let dag = build_dag_with(4, DagRules::FROZEN);
        let i = dag.index(1, 3, 2, 2);
        assert_eq!(
            dag.vertex(i),
            DagVertex::Inner {
                b: 1,
                head: 3,
                cur: 2,
                layer: 2
            }
        );
        assert_eq!(dag.vertex(dag.sink_plus()), DagVertex::SinkPlus);
    }

    #[test]
    fn head_start_vertices_have_single_in_edge() {
        let dag = build_dag_with(6, DagRules::FROZEN);
        for a in [1, 3, 5] {
            let v = dag.index(0, a, a, 0);
            assert_eq!(dag.in_edges(v), &[(0, Weight::Unit)]);
        }
    }

    #[test]
    fn two_by_two() {
        let mut d = SkewRingMatrix::zero(2, 1);
        let p = GroupRingPoly::monomial(1, BigInt::from(5), Parity(1), 3);
        d.set(1, 2, p.clone()).unwrap();
        assert_eq!(pfaffian_dag(&d), p);
    }

    #[test]
    fn only_frozen_rules_agree_with_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mats: Vec<SkewRingMatrix> = [2, 4, 6]
            .iter()
            .flat_map(|&n| (0..5).map(move |_| n))
            .map(|n| random_scalar(n, &mut rng))
            .collect();
        for rules in DagRules::variants() {
            let agree = mats
                .iter()
                .all(|d| pfaffian_dag_with(d, rules).0 == pfaffian_naive(d).unwrap());
            assert_eq!(agree, rules == DagRules::FROZEN, "{rules:?}");
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let n = 8;
        let mut d = SkewRingMatrix::zero(n, 0);
        let big = BigInt::from(1u64 << 40);
        for i in 1..=n {
            for j in i + 1..=n {
                d.set(i, j, GroupRingPoly::constant(0, &big + (i * j) as u64))
                    .unwrap();
            }
        }
        let (p, stats) = pfaffian_dag_with(&d, DagRules::FROZEN);
        assert!(stats.used_bigint);
        assert_eq!(p, pfaffian_naive(&d).unwrap());
        assert!(stats.max_abs_coefficient <= coefficient_bound(&d));
    }

    #[test]
    fn odd_and_empty_orders() {
        assert!(pfaffian_dag(&SkewRingMatrix::zero(3, 0)).is_zero());
        assert_eq!(
            pfaffian_dag(&SkewRingMatrix::zero(0, 2)),
            GroupRingPoly::one(2)
        );
    }
}
