//! Undirected multigraphs with loops, parallel edges and stable edge ids.
//!
//! Vertices are `1..=n`. Edges carry an id chosen by the caller; ids survive
//! deletion and contraction so witnesses can always be reported in terms of
//! the input.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gf2::{Gf2Matrix, Gf2Vector};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {id} has endpoint {v} outside 1..={n}")]
    EndpointOutOfRange { id: EdgeId, v: Vertex, n: usize },
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("no edge with id {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(EdgeId),
    #[error("not a graph incidence matrix: column {col} has {ones} ones")]
    NotIncidence { col: usize, ones: usize },
    #[error("a matrix with no rows has no vertex to hang its columns on")]
    NoVertices,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The end other than `x`; `None` if `x` is not an end.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    index: BTreeMap<EdgeId, usize>,
}

impl MultiGraph {
    /// Edgeless graph on vertices `1..=n`.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// Builds a graph from `(u, v)` pairs with ids `0..`.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            g.add_edge(i, u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, id: EdgeId, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(GraphError::EndpointOutOfRange {
                    id,
                    v: x,
                    n: self.n,
                });
            }
        }
        if self.index.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        self.index.insert(id, self.edges.len());
        self.edges.push(Edge { id, u, v });
        Ok(())
    }

    /// Adds an edge with the next unused id and returns that id.
    pub fn push_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId, GraphError> {
        let id = self.index.keys().next_back().map_or(0, |&k| k + 1);
        self.add_edge(id, u, v)?;
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.index.get(&id).map(|&i| &self.edges[i])
    }

    /// Position of edge `id` in [`MultiGraph::edges`].
    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    pub fn without_loops(&self) -> MultiGraph {
        self.filter_edges(|e| !e.is_loop())
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<MultiGraph, GraphError> {
        if !self.index.contains_key(&id) {
            return Err(GraphError::UnknownEdge(id));
        }
        Ok(self.filter_edges(|e| e.id != id))
    }

    pub fn filter_edges(&self, keep: impl Fn(&Edge) -> bool) -> MultiGraph {
        let mut g = MultiGraph::new(self.n);
        for e in self.edges.iter().filter(|e| keep(e)) {
            g.add_edge(e.id, e.u, e.v).expect("edges were valid");
        }
        g
    }

    /// Vertex-to-column incidence matrix over GF(2); loops give zero columns.
    pub fn incidence_matrix(&self) -> Gf2Matrix {
        let mut a = Gf2Matrix::zeros(self.n, self.m());
        for (j, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                a.set(e.u - 1, j, true);
                a.set(e.v - 1, j, true);
            }
        }
        a
    }

    /// Contracts a non-loop edge. The merged vertex takes the smaller of the
    /// two labels and later vertices shift down by one. Returns the new graph
    /// and `map[old] = new` (index 0 unused).
    pub fn contract_edge(&self, id: EdgeId) -> Result<(MultiGraph, Vec<Vertex>), GraphError> {
        let e = *self.edge(id).ok_or(GraphError::UnknownEdge(id))?;
        if e.is_loop() {
            return Err(GraphError::ContractLoop(id));
        }
        let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
        let mut map = vec![0; self.n + 1];
        for (old, slot) in map.iter_mut().enumerate().skip(1) {
            let old = if old == gone { keep } else { old };
            *slot = if old > gone { old - 1 } else { old };
        }
        let mut g = MultiGraph::new(self.n - 1);
        for f in self.edges.iter().filter(|f| f.id != id) {
            g.add_edge(f.id, map[f.u], map[f.v])
                .expect("map stays in range");
        }
        Ok((g, map))
    }

    /// Component label (0-based, ordered by smallest vertex) per vertex;
    /// index 0 is unused.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n + 1);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let mut label = vec![usize::MAX; self.n + 1];
        let mut root_label = BTreeMap::new();
        for v in self.vertices() {
            let r = uf.find(v);
            let next = root_label.len();
            label[v] = *root_label.entry(r).or_insert(next);
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components()
            .iter()
            .skip(1)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Ids of the edges with exactly one end in `side`, sorted.
    pub fn cut(&self, side: &[Vertex]) -> Vec<EdgeId> {
        let mut inside = vec![false; self.n + 1];
        for &v in side {
            inside[v] = true;
        }
        let mut out: Vec<EdgeId> = self
            .edges
            .iter()
            .filter(|e| inside[e.u] != inside[e.v])
            .map(|e| e.id)
            .collect();
        out.sort_unstable();
        out
    }

    /// Characteristic vector over edge positions of a set of edge ids.
    pub fn edge_vector(&self, ids: &[EdgeId]) -> Result<Gf2Vector, GraphError> {
        let mut v = Gf2Vector::zeros(self.m());
        for &id in ids {
            v.flip(self.position(id).ok_or(GraphError::UnknownEdge(id))?);
        }
        Ok(v)
    }

    /// Vertex degrees mod 2 of an edge set; index 0 unused.
    pub fn odd_vertices(&self, ids: &[EdgeId]) -> Result<Vec<Vertex>, GraphError> {
        let mut deg = vec![false; self.n + 1];
        for &id in ids {
            let e = self.edge(id).ok_or(GraphError::UnknownEdge(id))?;
            if !e.is_loop() {
                deg[e.u] ^= true;
                deg[e.v] ^= true;
            }
        }
        Ok(self.vertices().filter(|&v| deg[v]).collect())
    }
}

/// Inverts [`MultiGraph::incidence_matrix`]: rows are vertices, column `j`
/// becomes edge id `j`. Zero columns become loops at vertex 1.
pub fn graph_from_incidence(a: &Gf2Matrix) -> Result<MultiGraph, GraphError> {
    let mut g = MultiGraph::new(a.nrows());
    for j in 0..a.ncols() {
        let col = a.column(j);
        let ones: Vec<usize> = col.iter_ones().collect();
        match ones.as_slice() {
            [] => {
                if a.nrows() == 0 {
                    return Err(GraphError::NoVertices);
                }
                g.add_edge(j, 1, 1)?;
            }
            [u, v] => g.add_edge(j, u + 1, v + 1)?,
            _ => {
                return Err(GraphError::NotIncidence {
                    col: j,
                    ones: ones.len(),
                })
            }
        }
    }
    Ok(g)
}

/// A total labelling of the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling<T> {
    labels: BTreeMap<EdgeId, T>,
}

impl<T: Clone> EdgeLabeling<T> {
    /// Fails with the first edge id that is missing or extra.
    pub fn new(g: &MultiGraph, labels: BTreeMap<EdgeId, T>) -> Result<Self, GraphError> {
        for id in g.edge_ids() {
            if !labels.contains_key(&id) {
                return Err(GraphError::UnknownEdge(id));
            }
        }
        if let Some(&extra) = labels.keys().find(|id| g.edge(**id).is_none()) {
            return Err(GraphError::UnknownEdge(extra));
        }
        Ok(Self { labels })
    }

    pub fn constant(g: &MultiGraph, value: T) -> Self {
        Self {
            labels: g.edge_ids().map(|id| (id, value.clone())).collect(),
        }
    }

    /// Labels given in the order of `g.edges()`.
    pub fn from_vec(g: &MultiGraph, values: Vec<T>) -> Self {
        assert_eq!(values.len(), g.m(), "one label per edge");
        Self {
            labels: g.edge_ids().zip(values).collect(),
        }
    }

    pub fn get(&self, id: EdgeId) -> &T {
        &self.labels[&id]
    }

    pub fn set(&mut self, id: EdgeId, value: T) {
        self.labels.insert(id, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &T)> {
        self.labels.iter().map(|(&k, v)| (k, v))
    }

    /// Restriction to the edges of `g`, which must be a subgraph by ids.
    pub fn restrict(&self, g: &MultiGraph) -> Self {
        Self {
            labels: g
                .edge_ids()
                .map(|id| (id, self.labels[&id].clone()))
                .collect(),
        }
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns the new root, or `None`
    /// if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        Some(ra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MultiGraph {
        MultiGraph::from_pairs(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let g = MultiGraph::from_pairs(2, &[(1, 2)]).unwrap();
        assert_eq!(g.incidence_matrix(), Gf2Matrix::from_u8_rows(&[&[1], &[1]]));
        let g = MultiGraph::from_pairs(2, &[(2, 2)]).unwrap();
        assert!(g.incidence_matrix().is_zero());
        let a = triangle().incidence_matrix();
        assert!((0..3).all(|j| a.column(j).weight() == 2));
    }

    #[test]
    fn from_incidence_examples() {
        let g = graph_from_incidence(&Gf2Matrix::from_u8_rows(&[&[1], &[1]])).unwrap();
        assert_eq!(g.edges(), &[Edge { id: 0, u: 1, v: 2 }]);
        let g = graph_from_incidence(&Gf2Matrix::zeros(3, 1)).unwrap();
        assert_eq!(g.edges(), &[Edge { id: 0, u: 1, v: 1 }]);
        let bad = Gf2Matrix::from_u8_rows(&[&[1], &[0]]);
        assert_eq!(
            graph_from_incidence(&bad),
            Err(GraphError::NotIncidence { col: 0, ones: 1 })
        );
        let bad = Gf2Matrix::from_u8_rows(&[&[1], &[1], &[1]]);
        assert!(graph_from_incidence(&bad).is_err());
    }

    #[test]
    fn contract_examples() {
        let g = MultiGraph::from_pairs(2, &[(1, 2)]).unwrap();
        let (h, map) = g.contract_edge(0).unwrap();
        assert_eq!((h.n(), h.m()), (1, 0));
        assert_eq!(map[1..], [1, 1]);

        let (h, _) = triangle().contract_edge(0).unwrap();
        assert_eq!((h.n(), h.m()), (2, 2));
        assert!(h.edges().iter().all(|e| !e.is_loop()));

        let path = MultiGraph::from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let (h, map) = path.contract_edge(1).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(map[1..], [1, 2, 2, 3]);
        assert_eq!(h.component_count(), 1);

        let looped = MultiGraph::from_pairs(1, &[(1, 1)]).unwrap();
        assert_eq!(looped.contract_edge(0), Err(GraphError::ContractLoop(0)));
    }

    #[test]
    fn parallel_edges_become_loops() {
        let g = MultiGraph::from_pairs(2, &[(1, 2), (2, 1)]).unwrap();
        let (h, _) = g.contract_edge(0).unwrap();
        assert_eq!(h.edges(), &[Edge { id: 1, u: 1, v: 1 }]);
    }

    #[test]
    fn components_and_cuts() {
        let g = MultiGraph::from_pairs(5, &[(1, 2), (4, 5), (3, 3)]).unwrap();
        assert_eq!(g.components()[1..], [0, 0, 1, 2, 2]);
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.cut(&[2, 4]), vec![0, 1]);
        assert_eq!(g.odd_vertices(&[0, 2]).unwrap(), vec![1, 2]);
    }

    #[test]
    fn labeling_must_be_total() {
        let g = triangle();
        let mut m = BTreeMap::new();
        m.insert(0, 1u32);
        m.insert(1, 1u32);
        assert!(EdgeLabeling::new(&g, m.clone()).is_err());
        m.insert(2, 0);
        assert!(EdgeLabeling::new(&g, m.clone()).is_ok());
        m.insert(9, 0);
        assert!(EdgeLabeling::new(&g, m).is_err());
    }
}
