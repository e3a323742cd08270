//! Signed grafts `(G, S, T, B, C, D)`.
//!
//! The incidence matrix is the block matrix with rows `S` then `V(G)` and
//! columns `E(G)` then `T`:
//!
//! ```text
//!          E(G)   T
//!   S   [  C      D ]
//!   V   [  A(G)   B ]
//! ```
//!
//! The matroid of interest is always the one obtained by contracting `T`.
//! Over GF(2) the negated identity in the perturbation construction is just
//! the identity.

use thiserror::Error;

use crate::evencut::{EvenCutError, EvenCutInstance};
use crate::gf2::{contract_delete, factor_low_rank, Gf2Matrix, Gf2Vector, MatroidRep};
use crate::graph::MultiGraph;
use crate::parity::{Parity, MAX_PARITY_DIM};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraftError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("expected s = 1, found s = {0}")]
    NotSingleRow(usize),
    #[error("expected t = 1, found t = {0}")]
    NotSingleColumn(usize),
    #[error("{0} exceeds the supported parity dimension")]
    TooLarge(usize),
    #[error(transparent)]
    EvenCut(#[from] EvenCutError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraft {
    pub graph: MultiGraph,
    /// `V(G) x T`
    pub b: Gf2Matrix,
    /// `S x E(G)`, columns in graph edge order.
    pub c: Gf2Matrix,
    /// `S x T`
    pub d: Gf2Matrix,
}

/// Label of the `i`-th (0-based) element of `S`.
pub fn s_label(i: usize) -> String {
    format!("s{}", i + 1)
}

/// Label of the `i`-th (0-based) element of `T`.
pub fn t_label(i: usize) -> String {
    format!("t{}", i + 1)
}

impl SignedGraft {
    pub fn new(
        graph: MultiGraph,
        b: Gf2Matrix,
        c: Gf2Matrix,
        d: Gf2Matrix,
    ) -> Result<Self, GraftError> {
        let (n, m) = (graph.n(), graph.m());
        let (s, t) = (c.nrows(), b.ncols());
        let bad = |what: &str, got: &Gf2Matrix, rows: usize, cols: usize| {
            GraftError::Dimension(format!(
                "{what} is {}x{}, expected {rows}x{cols}",
                got.nrows(),
                got.ncols()
            ))
        };
        if b.nrows() != n {
            return Err(bad("B", &b, n, t));
        }
        if c.ncols() != m {
            return Err(bad("C", &c, s, m));
        }
        if d.nrows() != s || d.ncols() != t {
            return Err(bad("D", &d, s, t));
        }
        Ok(Self { graph, b, c, d })
    }

    pub fn s(&self) -> usize {
        self.c.nrows()
    }

    pub fn t(&self) -> usize {
        self.b.ncols()
    }

    /// The block incidence matrix, labelled `s1..` / `v1..` on rows and
    /// `e<id>` / `t1..` on columns.
    pub fn incidence(&self) -> Gf2Matrix {
        let top = self.c.hstack(&self.d).expect("rows agree");
        let bottom = self
            .graph
            .incidence_matrix()
            .hstack(&self.b)
            .expect("rows agree");
        let rows = (0..self.s())
            .map(s_label)
            .chain(self.graph.vertices().map(|v| format!("v{v}")))
            .collect();
        let cols = self
            .graph
            .edge_ids()
            .map(|id| format!("e{id}"))
            .chain((0..self.t()).map(t_label))
            .collect();
        top.vstack(&bottom)
            .expect("columns agree")
            .with_row_labels(rows)
            .expect("distinct")
            .with_col_labels(cols)
            .expect("distinct")
    }

    /// `M(graft) / T`, with ground set labelled by edge ids.
    pub fn contracted(&self) -> MatroidRep {
        let m = self.graph.m();
        let rep = MatroidRep::from_matrix(self.incidence());
        let t_cols: Vec<usize> = (m..m + self.t()).collect();
        let minor = contract_delete(&rep, &t_cols, &[]).expect("columns exist");
        let ground = self.graph.edge_ids().map(|id| id.to_string()).collect();
        MatroidRep::new(minor.matrix().clone(), ground).expect("ids are distinct")
    }

    /// Column of `C` for the edge at position `pos`, as a parity vector.
    pub fn gamma(&self, pos: usize) -> Parity {
        bits_to_parity(&self.c.column(pos))
    }
}

fn bits_to_parity(v: &Gf2Vector) -> Parity {
    v.iter_ones()
        .fold(Parity::ZERO, |p, i| p.with_bit(i as u32, true))
}

/// The `(t, t)`-graft `(G, S, S, B, C, I)` with `P = BC`, so that
/// `M(A(G) + P) = M(graft) / T`.
pub fn from_perturbation(g: &MultiGraph, p: &Gf2Matrix) -> Result<SignedGraft, GraftError> {
    if p.nrows() != g.n() || p.ncols() != g.m() {
        return Err(GraftError::Dimension(format!(
            "P is {}x{}, graph has {} vertices and {} edges",
            p.nrows(),
            p.ncols(),
            g.n(),
            g.m()
        )));
    }
    let (b, c) = factor_low_rank(p);
    let t = b.ncols();
    SignedGraft::new(g.clone(), b, c, Gf2Matrix::identity(t))
}

/// One `(1, t)`-graft per `y ∈ GF(2)^s` (bit `i` of the index is `y_i`),
/// with rows `yC` and `yD`. The cogirth of the input is the minimum over
/// the outputs.
pub fn reduce_s(sg: &SignedGraft) -> Result<Vec<SignedGraft>, GraftError> {
    let s = sg.s();
    if s >= 32 {
        return Err(GraftError::TooLarge(s));
    }
    Ok((0u64..1 << s)
        .map(|y| {
            let sel = Gf2Vector::from_bits((0..s).map(|i| y >> i & 1 == 1));
            let c =
                Gf2Matrix::from_rows(sg.c.ncols(), vec![sg.c.left_mul_vec(&sel)]).expect("width");
            let d =
                Gf2Matrix::from_rows(sg.d.ncols(), vec![sg.d.left_mul_vec(&sel)]).expect("width");
            SignedGraft::new(sg.graph.clone(), sg.b.clone(), c, d).expect("shapes follow")
        })
        .collect())
}

/// One `(s, 1)`-graft per `x ∈ GF(2)^t` (bit `i` of the index is `x_i`),
/// with columns `Bx` and `Dx`. The girth of the input is the minimum over
/// the outputs.
pub fn reduce_t(sg: &SignedGraft) -> Result<Vec<SignedGraft>, GraftError> {
    let t = sg.t();
    if t >= 32 {
        return Err(GraftError::TooLarge(t));
    }
    Ok((0u64..1 << t)
        .map(|x| {
            let sel = Gf2Vector::from_bits((0..t).map(|i| x >> i & 1 == 1));
            let b = Gf2Matrix::from_columns(sg.b.nrows(), &[sg.b.mul_vec(&sel)]).expect("height");
            let d = Gf2Matrix::from_columns(sg.d.nrows(), &[sg.d.mul_vec(&sel)]).expect("height");
            SignedGraft::new(sg.graph.clone(), b, sg.c.clone(), d).expect("shapes follow")
        })
        .collect())
}

/// Reads a `(1, t)`-graft as `(G, τ, Σ, α)`: `τ(v)` is row `v` of `B`, `Σ`
/// the support of `C`, `α` the row of `D`.
pub fn to_evencut(sg: &SignedGraft) -> Result<EvenCutInstance, GraftError> {
    if sg.s() != 1 {
        return Err(GraftError::NotSingleRow(sg.s()));
    }
    let t = sg.t();
    if t > MAX_PARITY_DIM as usize {
        return Err(GraftError::TooLarge(t));
    }
    let tau = (0..sg.graph.n())
        .map(|v| bits_to_parity(sg.b.row(v)))
        .collect();
    let sigma =
        sg.c.row(0)
            .iter_ones()
            .map(|pos| sg.graph.edges()[pos].id)
            .collect();
    let alpha = bits_to_parity(sg.d.row(0));
    Ok(EvenCutInstance::new(
        sg.graph.clone(),
        t as u32,
        tau,
        sigma,
        alpha,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{cogirth_oracle, girth_oracle, rank};

    fn triangle() -> MultiGraph {
        MultiGraph::from_pairs(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn incidence_of_plain_graph() {
        let g = triangle();
        let sg = SignedGraft::new(
            g.clone(),
            Gf2Matrix::zeros(3, 0),
            Gf2Matrix::zeros(0, 3),
            Gf2Matrix::zeros(0, 0),
        )
        .unwrap();
        let a = sg.incidence();
        assert_eq!(a.rows(), g.incidence_matrix().rows());
    }

    #[test]
    fn incidence_block_layout() {
        let g = MultiGraph::from_pairs(2, &[(1, 2)]).unwrap();
        let sg = SignedGraft::new(
            g,
            Gf2Matrix::zeros(2, 1),
            Gf2Matrix::zeros(1, 1),
            Gf2Matrix::zeros(1, 1),
        )
        .unwrap();
        let a = sg.incidence();
        assert_eq!(
            a.rows(),
            Gf2Matrix::from_u8_rows(&[&[0, 0], &[1, 0], &[1, 0]]).rows()
        );
        assert_eq!(a.row_labels().unwrap(), ["s1", "v1", "v2"]);
        assert_eq!(a.col_labels().unwrap(), ["e0", "t1"]);
    }

    #[test]
    fn zero_perturbation_is_graphic() {
        let g = triangle();
        let sg = from_perturbation(&g, &Gf2Matrix::zeros(3, 3)).unwrap();
        assert_eq!((sg.s(), sg.t()), (0, 0));
        assert_eq!(
            girth_oracle(&sg.contracted()).unwrap(),
            crate::ExtNat::finite(3)
        );
    }

    #[test]
    fn rank_one_perturbation_keeps_girth() {
        let g = triangle();
        let p = Gf2Matrix::from_u8_rows(&[&[1, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        let sg = from_perturbation(&g, &p).unwrap();
        let direct = MatroidRep::from_matrix(g.incidence_matrix().add(&p).unwrap());
        assert_eq!(
            girth_oracle(&sg.contracted()).unwrap(),
            girth_oracle(&direct).unwrap()
        );
        assert_eq!(
            rank(&sg.contracted().matrix().clone()),
            rank(direct.matrix())
        );
    }

    #[test]
    fn reduce_counts_and_selectors() {
        let g = triangle();
        let sg = SignedGraft::new(
            g,
            Gf2Matrix::from_u8_rows(&[&[1], &[0], &[1]]),
            Gf2Matrix::from_u8_rows(&[&[1, 0, 1]]),
            Gf2Matrix::from_u8_rows(&[&[1]]),
        )
        .unwrap();
        let rs = reduce_s(&sg).unwrap();
        assert_eq!(rs.len(), 2);
        assert!(rs[0].c.is_zero() && rs[0].d.is_zero());
        assert_eq!(rs[1], sg);
        let rt = reduce_t(&sg).unwrap();
        assert_eq!(rt.len(), 2);
        assert!(rt[0].b.is_zero());
        assert_eq!(rt[1], sg);
    }

    #[test]
    fn reduce_with_empty_sides() {
        let g = triangle();
        let sg = from_perturbation(&g, &Gf2Matrix::zeros(3, 3)).unwrap();
        let rs = reduce_s(&sg).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].s(), 1);
        assert!(rs[0].c.is_zero());
        let rt = reduce_t(&sg).unwrap();
        assert_eq!(rt.len(), 1);
        assert_eq!(rt[0].t(), 1);
        assert_eq!(
            girth_oracle(&rt[0].contracted()).unwrap(),
            crate::ExtNat::finite(3)
        );
    }

    #[test]
    fn evencut_reading() {
        let g = triangle();
        let sg = SignedGraft::new(
            g,
            Gf2Matrix::zeros(3, 0),
            Gf2Matrix::from_u8_rows(&[&[1, 0, 0]]),
            Gf2Matrix::zeros(1, 0),
        )
        .unwrap();
        let inst = to_evencut(&sg).unwrap();
        assert_eq!(inst.sigma, [0].into_iter().collect());
        assert_eq!(
            cogirth_oracle(&inst.matroid()).unwrap(),
            cogirth_oracle(&sg.contracted()).unwrap()
        );
        let two = SignedGraft::new(
            triangle(),
            Gf2Matrix::zeros(3, 0),
            Gf2Matrix::zeros(2, 3),
            Gf2Matrix::zeros(2, 0),
        )
        .unwrap();
        assert_eq!(to_evencut(&two), Err(GraftError::NotSingleRow(2)));
    }
}
