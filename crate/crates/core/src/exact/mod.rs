//! Ground-truth optima: maximum common independent sets, maximum matchings,
//! exhaustive enumerators for tiny instances and the exact value of the best
//! online algorithm on a tiny graph.

mod intersection;
mod matching;
mod online_dp;

use thiserror::Error;

use crate::instances::GraphError;
use crate::matroid::{ElementSet, MatroidError};

pub use intersection::{brute_force_intersection, exact_intersection};
pub use matching::{brute_force_matching, max_bipartite_matching};
pub use online_dp::{optimal_online_value, optimal_online_value_labeled, OnlineDPResult};

/// Largest ground set the exhaustive enumerators accept.
pub const BRUTE_FORCE_LIMIT: usize = 20;
/// Largest ground set the online dynamic programs accept.
pub const ONLINE_DP_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{what} has size {size}, above the limit of {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptResult {
    pub opt_set: ElementSet,
    pub opt_size: usize,
    pub oracle_calls: u64,
}

impl OptResult {
    fn new(opt_set: ElementSet, oracle_calls: u64) -> Self {
        OptResult {
            opt_size: opt_set.len(),
            opt_set,
            oracle_calls,
        }
    }
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), ExactError> {
    if size > limit {
        Err(ExactError::SizeGuard { what, size, limit })
    } else {
        Ok(())
    }
}
