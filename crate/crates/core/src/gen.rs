//! Seeded random instances for every problem kind. The same parameters and
//! seed always give the same instance.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::evencut::{EvenCutInstance, SetEvenCutInstance};
use crate::gf2::{rank, Gf2Matrix, Gf2Vector};
use crate::graft::SignedGraft;
use crate::graph::{EdgeLabeling, MultiGraph, Vertex};
use crate::parity::{Parity, MAX_PARITY_DIM};
use crate::parityjoin::ParityGraph;
use crate::pfaffian::{GroupRingPoly, MatchingInstance, SkewRingMatrix};
use crate::seed::{rng_from_seed, SolverRng};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

fn infeasible<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::Infeasible(msg.into()))
}

fn check_t(t: u32) -> Result<(), GenError> {
    if t > MAX_PARITY_DIM {
        return infeasible(format!("t = {t} exceeds {MAX_PARITY_DIM}"));
    }
    Ok(())
}

fn random_parity<R: Rng>(rng: &mut R, t: u32) -> Parity {
    Parity(rng.gen_range(0..1u32 << t))
}

/// `m` edges with uniform endpoints; a loop is allowed only if `loops` is set
/// (or there is a single vertex).
pub fn random_multigraph<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    loops: bool,
) -> Result<MultiGraph, GenError> {
    if n == 0 && m > 0 {
        return infeasible("edges need at least one vertex");
    }
    if n == 1 && m > 0 && !loops {
        return infeasible("a single vertex only carries loops");
    }
    let mut g = MultiGraph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(1..=n);
        let v = loop {
            let v = rng.gen_range(1..=n);
            if loops || v != u {
                break v;
            }
        };
        g.push_edge(u, v).expect("endpoints in range");
    }
    Ok(g)
}

/// A random spanning tree (each vertex attaches to an earlier one in a
/// shuffled order) plus `m - n + 1` uniform extra edges.
pub fn random_connected_multigraph<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    loops: bool,
) -> Result<MultiGraph, GenError> {
    if n == 0 {
        return infeasible("a connected graph needs a vertex");
    }
    if m + 1 < n {
        return infeasible(format!("{m} edges cannot connect {n} vertices"));
    }
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::with_capacity(m);
    for i in 1..n {
        pairs.push((order[rng.gen_range(0..i)], order[i]));
    }
    let extra = random_multigraph(rng, n, m + 1 - n, loops || n == 1)?;
    pairs.extend(extra.edges().iter().map(|e| (e.u, e.v)));
    pairs.shuffle(rng);
    Ok(MultiGraph::from_pairs(n, &pairs).expect("endpoints in range"))
}

/// A uniformly random `rows x cols` matrix of rank `min(rows, cols)`, by
/// rejection.
pub fn random_full_rank<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Gf2Matrix {
    loop {
        let m = Gf2Matrix::from_rows(
            cols,
            (0..rows)
                .map(|_| Gf2Vector::from_bits((0..cols).map(|_| rng.gen_bool(0.5))))
                .collect(),
        )
        .expect("row width");
        if rank(&m) == rows.min(cols) {
            return m;
        }
    }
}

/// `(A, P)` with `A` the incidence matrix of a random connected multigraph
/// on `r` vertices with `n` edges (loops allowed) and `P = BC` of rank
/// exactly `t`.
pub fn perturbed(
    r: usize,
    n: usize,
    t: usize,
    seed: u64,
) -> Result<(Gf2Matrix, Gf2Matrix), GenError> {
    if t > r.min(n) {
        return infeasible(format!("rank {t} exceeds min({r}, {n})"));
    }
    let mut rng = rng_from_seed(seed);
    let g = random_connected_multigraph(&mut rng, r, n, true)?;
    let b = random_full_rank(&mut rng, r, t);
    let c = random_full_rank(&mut rng, t, n);
    let p = b.mul(&c).expect("inner dimensions agree");
    Ok((g.incidence_matrix(), p))
}

pub fn parity_graph(n: usize, m: usize, t: u32, seed: u64) -> Result<ParityGraph, GenError> {
    check_t(t)?;
    let mut rng = rng_from_seed(seed);
    let g = random_multigraph(&mut rng, n, m, true)?;
    let gamma = EdgeLabeling::from_vec(&g, (0..m).map(|_| random_parity(&mut rng, t)).collect());
    Ok(ParityGraph::new(g, t, gamma).expect("labels fit"))
}

/// A random parity graph together with a random even terminal set of size
/// `terminals` and a random demand.
pub fn parity_join_instance(
    n: usize,
    m: usize,
    t: u32,
    terminals: usize,
    seed: u64,
) -> Result<(ParityGraph, BTreeSet<Vertex>, Parity), GenError> {
    if terminals > n {
        return infeasible(format!("{terminals} terminals among {n} vertices"));
    }
    let pg = parity_graph(n, m, t, seed)?;
    let mut rng = rng_from_seed(seed ^ 0x7465_726d);
    let mut vs: Vec<Vertex> = (1..=n).collect();
    vs.shuffle(&mut rng);
    let set = vs.into_iter().take(terminals).collect();
    let alpha = random_parity(&mut rng, t);
    Ok((pg, set, alpha))
}

pub fn matching_instance(
    n: usize,
    m: usize,
    t: u32,
    max_weight: u64,
    seed: u64,
) -> Result<MatchingInstance, GenError> {
    check_t(t)?;
    let mut rng = rng_from_seed(seed);
    let g = random_multigraph(&mut rng, n, m, false)?;
    let weight =
        EdgeLabeling::from_vec(&g, (0..m).map(|_| rng.gen_range(0..=max_weight)).collect());
    let gamma = EdgeLabeling::from_vec(&g, (0..m).map(|_| random_parity(&mut rng, t)).collect());
    let alpha = random_parity(&mut rng, t);
    Ok(MatchingInstance::new(g, t, weight, gamma, alpha).expect("labels fit"))
}

/// Connected graph with `t` random even terminal sets.
pub fn evencut_set(n: usize, m: usize, t: u32, seed: u64) -> Result<SetEvenCutInstance, GenError> {
    check_t(t)?;
    let mut rng = rng_from_seed(seed);
    let g = random_connected_multigraph(&mut rng, n, m, false)?;
    let terminals = (0..t)
        .map(|_| {
            let mut set: BTreeSet<Vertex> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
            if set.len() % 2 == 1 {
                let v = rng.gen_range(1..=n);
                if !set.remove(&v) {
                    set.insert(v);
                }
            }
            set
        })
        .collect();
    Ok(SetEvenCutInstance::new(g, terminals).expect("sets are even"))
}

/// Connected graph (loops allowed) with random labels, `Σ` and `α`.
pub fn evencut_dim(n: usize, m: usize, t: u32, seed: u64) -> Result<EvenCutInstance, GenError> {
    check_t(t)?;
    let mut rng = rng_from_seed(seed);
    let g = random_connected_multigraph(&mut rng, n, m, true)?;
    let tau = (0..n).map(|_| random_parity(&mut rng, t)).collect();
    let sigma = g.edge_ids().filter(|_| rng.gen_bool(0.3)).collect();
    let alpha = random_parity(&mut rng, t);
    Ok(EvenCutInstance::new(g, t, tau, sigma, alpha).expect("labels fit"))
}

/// Random graft on a connected multigraph with `B`, `C`, `D` uniform.
pub fn graft(n: usize, m: usize, s: usize, t: usize, seed: u64) -> Result<SignedGraft, GenError> {
    let mut rng = rng_from_seed(seed);
    let g = random_connected_multigraph(&mut rng, n, m, true)?;
    let mut uniform = |rows: usize, cols: usize| {
        Gf2Matrix::from_rows(
            cols,
            (0..rows)
                .map(|_| Gf2Vector::from_bits((0..cols).map(|_| rng.gen_bool(0.5))))
                .collect(),
        )
        .expect("row width")
    };
    let b = uniform(n, t);
    let c = uniform(s, m);
    let d = uniform(s, t);
    Ok(SignedGraft::new(g, b, c, d).expect("shapes agree"))
}

/// Skew matrix whose entries above the diagonal are non-zero with
/// probability `density` and then carry up to `max_terms` terms with
/// coefficients in `-max_coef..=max_coef` and degrees up to `max_deg`.
pub fn skew_matrix(
    n: usize,
    t: u32,
    density: f64,
    max_terms: usize,
    max_coef: i64,
    max_deg: u64,
    seed: u64,
) -> Result<SkewRingMatrix, GenError> {
    check_t(t)?;
    if !(0.0..=1.0).contains(&density) {
        return infeasible("density must lie in [0, 1]");
    }
    let mut rng = rng_from_seed(seed);
    let mut d = SkewRingMatrix::zero(n, t);
    for i in 1..=n {
        for j in i + 1..=n {
            if !rng.gen_bool(density) {
                continue;
            }
            d.set(i, j, random_poly(&mut rng, t, max_terms, max_coef, max_deg))
                .expect("indices in range");
        }
    }
    Ok(d)
}

fn random_poly(
    rng: &mut SolverRng,
    t: u32,
    max_terms: usize,
    max_coef: i64,
    max_deg: u64,
) -> GroupRingPoly {
    let mut p = GroupRingPoly::zero(t);
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let coef = rng.gen_range(-max_coef..=max_coef);
        p.add_term(
            random_parity(rng, t),
            rng.gen_range(0..=max_deg),
            BigInt::from(coef),
        );
    }
    p
}
