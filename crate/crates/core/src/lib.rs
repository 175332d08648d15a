//! Online matroid intersection in the random-order model.
//!
//! Elements of a ground set arrive one at a time in a uniformly random order
//! and each must be accepted or rejected on the spot; the goal is a large set
//! that stays independent in two (or `k`) matroids. The crate provides:
//!
//! * [`matroid`]: independence oracles with call accounting, partition,
//!   graphic and uniform families, contraction and restriction.
//! * [`online`]: greedy, marking-greedy (bipartite, two-matroid, `k`-matroid
//!   and general-graph forms), the coin-toss combination and the offline
//!   single-pass variant.
//! * [`exact`]: exact offline optima and the optimal online value of tiny
//!   instances.
//! * [`sampling`]: the deferred-decision sampling algorithm and exact checks
//!   of the sampling bound.
//! * [`instances`]: seeded generators for the benchmark families.
//! * [`harness`]: Monte-Carlo trials, statistics and CSV output.

pub mod exact;
pub mod harness;
pub mod instances;
pub mod matroid;
pub mod online;
pub mod sampling;

pub use matroid::{Element, ElementSet, Matroid, MatroidError};
