//! Pfaffians over `Z[y, z] / (y_i^2 - 1)` and parity-constrained perfect
//! matching.

pub mod dag;
pub mod matching;
pub mod ring;
pub mod skew;

pub use dag::{
    build_dag, build_dag_with, coefficient_bound, pfaffian_dag, pfaffian_dag_with, DagRules,
    DagStats, DagVertex, PfaffianDag, Weight,
};
pub use matching::{
    dedupe_parallel, default_reps, parity_matching, parity_matching_once, tutte_matrix,
    MatchingError, MatchingInstance, DEFAULT_CONFIDENCE,
};
pub use ring::{GroupRingPoly, RingError};
pub use skew::{
    det_bareiss, perfect_pairings, pfaffian_naive, sign_of_matching, SkewError, SkewRingMatrix,
};
