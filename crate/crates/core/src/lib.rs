//! Girth and cogirth of binary matroids `M(A + P)` where `A` is the incidence
//! matrix of a graph and `P` has small rank.
//!
//! The solvers are randomized with one-sided error. Every randomized layer
//! has an exhaustive counterpart in [`brute`] or [`gf2`] so small instances
//! can be certified.

pub mod brute;
pub mod evencut;
pub mod ext;
pub mod format;
pub mod gen;
pub mod gf2;
pub mod graft;
pub mod graph;
pub mod parity;
pub mod parityjoin;
pub mod pfaffian;
pub mod pipeline;
pub mod seed;
pub mod selftest;

pub use ext::ExtNat;
pub use gf2::{Gf2Matrix, Gf2Vector, MatroidRep};
pub use graph::{EdgeId, MultiGraph, Vertex};
pub use parity::Parity;
