//! Arrival-order algorithms: greedy, the two-phase marking-greedy family,
//! the coin-toss combination and the single-pass offline variant.
//!
//! Matroid algorithms take `&[&M]` oracles and an [`ArrivalStream`]; graph
//! algorithms take a [`Graph`] and work on vertex occupancy directly.

mod graph_algos;
mod marking;
mod params;
mod stream;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instances::GraphError;
use crate::matroid::{Element, ElementSet, Matroid, MatroidError};

pub use graph_algos::{greedy_matching, marking_greedy_bipartite, marking_greedy_general};
pub use marking::{
    combined_algorithm, marking_greedy_k, marking_greedy_omi, offline_half_plus_delta, phi_sets,
};
pub use params::{coin_probability, AlgoParams};
pub use stream::{ArrivalStream, RandomnessTape};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OnlineError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("need at least {needed} matroids, got {got}")]
    TooFewMatroids { needed: usize, got: usize },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("element {0} qualifies for more than one phase-two branch")]
    AmbiguousBranch(Element),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Greedy,
    MarkingGreedy,
}

/// Bookkeeping of a two-phase run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseState {
    /// Everything greedy selected in the first phase.
    pub t_f: ElementSet,
    /// The kept part of `t_f`.
    pub s: ElementSet,
    /// Second-phase picks, one set per branch.
    pub n: Vec<ElementSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    /// Final solution in the order its elements were accepted.
    pub picked: Vec<Element>,
    pub phases: Option<PhaseState>,
    /// Stream position where the second phase starts.
    pub boundary: usize,
    /// Oracle calls made during the run, per matroid.
    pub calls: Vec<u64>,
    pub branch: Option<Branch>,
}

impl RunResult {
    pub fn size(&self) -> usize {
        self.picked.len()
    }

    pub fn picked_set(&self) -> ElementSet {
        self.picked.iter().copied().collect()
    }

    pub fn total_calls(&self) -> u64 {
        self.calls.iter().sum()
    }
}

fn snapshot<M: Matroid + ?Sized>(ms: &[&M]) -> Vec<u64> {
    ms.iter().map(|m| m.calls()).collect()
}

fn since<M: Matroid + ?Sized>(ms: &[&M], before: &[u64]) -> Vec<u64> {
    ms.iter().zip(before).map(|(m, b)| m.calls() - b).collect()
}

/// Greedy over any number of matroids: accept an arriving element whenever
/// the solution stays independent in all of them. Queries stop at the first
/// matroid that rejects, so each element costs at most `k` calls.
pub fn greedy<M: Matroid + ?Sized>(matroids: &[&M], stream: &mut ArrivalStream) -> Result<RunResult, OnlineError> {
    let (run, _) = greedy_with_checkpoints(matroids, stream, &[])?;
    Ok(run)
}

/// Greedy that also reports the solution size after each prefix length in
/// `checkpoints` (positions in the stream, in any order).
pub fn greedy_with_checkpoints<M: Matroid + ?Sized>(
    matroids: &[&M],
    stream: &mut ArrivalStream,
    checkpoints: &[usize],
) -> Result<(RunResult, Vec<usize>), OnlineError> {
    if matroids.is_empty() {
        return Err(OnlineError::TooFewMatroids { needed: 1, got: 0 });
    }
    for &e in stream.order() {
        for m in matroids {
            if !m.contains(e) {
                return Err(MatroidError::NotInGround(e.index()).into());
            }
        }
    }
    let before = snapshot(matroids);
    let mut states: Vec<_> = matroids.iter().map(|m| m.incremental()).collect();
    let mut picked = Vec::new();
    let mut sizes = vec![0; checkpoints.len()];
    let record = |pos: usize, size: usize, sizes: &mut [usize]| {
        for (c, s) in checkpoints.iter().zip(sizes.iter_mut()) {
            if *c == pos {
                *s = size;
            }
        }
    };
    record(0, 0, &mut sizes);
    let mut pos = 0;
    for e in stream.by_ref() {
        if states.iter_mut().all(|s| s.can_add(e)) {
            states.iter_mut().for_each(|s| s.push(e));
            picked.push(e);
        }
        pos += 1;
        record(pos, picked.len(), &mut sizes);
    }
    // checkpoints past the end see the final size
    for (c, s) in checkpoints.iter().zip(sizes.iter_mut()) {
        if *c > pos {
            *s = picked.len();
        }
    }
    drop(states);
    Ok((
        RunResult {
            picked,
            phases: None,
            boundary: pos,
            calls: since(matroids, &before),
            branch: Some(Branch::Greedy),
        },
        sizes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{PartitionMatroid, UniformMatroid};

    #[test]
    fn free_matroids_take_everything() {
        let u = UniformMatroid::free(6);
        let ms: [&dyn Matroid; 2] = [&u, &u];
        let r = greedy(&ms, &mut ArrivalStream::random(6, 1)).unwrap();
        assert_eq!(r.size(), 6);
    }

    #[test]
    fn greedy_calls_short_circuit() {
        let a = PartitionMatroid::unit(vec![0, 0, 0, 0]);
        let b = UniformMatroid::free(4);
        let ms: [&dyn Matroid; 2] = [&a, &b];
        let r = greedy(&ms, &mut ArrivalStream::from_order((0..4).map(Element).collect())).unwrap();
        assert_eq!(r.picked, vec![Element(0)]);
        // 4 calls on a, 1 on b (only the accepted element reaches b)
        assert_eq!(r.calls, vec![4, 1]);
    }

    #[test]
    fn checkpoints_are_monotone() {
        let a = PartitionMatroid::unit((0..20).map(|i| i % 7).collect());
        let b = PartitionMatroid::unit((0..20).map(|i| i % 5).collect());
        let ms: [&dyn Matroid; 2] = [&a, &b];
        let (r, sizes) = greedy_with_checkpoints(&ms, &mut ArrivalStream::random(20, 3), &[0, 5, 10, 20, 25]).unwrap();
        assert_eq!(sizes[0], 0);
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(sizes[3], r.size());
        assert_eq!(sizes[4], r.size());
    }

    #[test]
    fn no_matroids_is_an_error() {
        let ms: [&dyn Matroid; 0] = [];
        assert!(greedy(&ms, &mut ArrivalStream::random(3, 0)).is_err());
    }
}
