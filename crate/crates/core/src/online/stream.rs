use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matroid::{ArrivalLog, Element};

/// A permutation of the ground set consumed one element at a time.
///
/// When an [`ArrivalLog`] is attached, each element is recorded as arrived
/// the moment it is handed out, so [`crate::matroid::Guarded`] oracles can
/// flag queries about elements that are still in the future.
#[derive(Clone, Debug)]
pub struct ArrivalStream {
    permutation: Vec<Element>,
    cursor: usize,
    seed: Option<u64>,
    log: Option<Arc<ArrivalLog>>,
}

impl ArrivalStream {
    /// Uniform permutation of `[0, m)` by Fisher–Yates from `seed`.
    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut permutation: Vec<Element> = (0..m).map(Element).collect();
        permutation.shuffle(&mut rng);
        ArrivalStream {
            permutation,
            cursor: 0,
            seed: Some(seed),
            log: None,
        }
    }

    pub fn from_order(order: Vec<Element>) -> Self {
        ArrivalStream {
            permutation: order,
            cursor: 0,
            seed: None,
            log: None,
        }
    }

    pub fn with_log(mut self, log: Arc<ArrivalLog>) -> Self {
        self.log = Some(log);
        self
    }

    pub fn order(&self) -> &[Element] {
        &self.permutation
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    /// Number of elements handed out so far.
    pub fn position(&self) -> usize {
        self.cursor
    }
}

impl Iterator for ArrivalStream {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let e = *self.permutation.get(self.cursor)?;
        self.cursor += 1;
        if let Some(log) = &self.log {
            log.mark(e);
        }
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.permutation.len() - self.cursor;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for ArrivalStream {}

/// The keep/mark bits `Ψ`, addressed by element id so they do not depend on
/// arrival order. A bit of one means "keep", drawn with probability `1 - p`.
#[derive(Clone, Debug, PartialEq)]
pub enum RandomnessTape {
    /// Bit `e` comes from ChaCha stream `e` of `seed`.
    Seeded { seed: u64, p: f64 },
    /// Explicit bits; elements past the end read as one.
    Explicit { bits: Vec<bool>, p: f64 },
}

impl RandomnessTape {
    pub fn seeded(seed: u64, p: f64) -> Self {
        RandomnessTape::Seeded { seed, p }
    }

    pub fn explicit(bits: Vec<bool>, p: f64) -> Self {
        RandomnessTape::Explicit { bits, p }
    }

    pub fn all_ones(m: usize) -> Self {
        RandomnessTape::explicit(vec![true; m], 0.0)
    }

    pub fn all_zeros(m: usize) -> Self {
        RandomnessTape::explicit(vec![false; m], 1.0)
    }

    pub fn p(&self) -> f64 {
        match self {
            RandomnessTape::Seeded { p, .. } | RandomnessTape::Explicit { p, .. } => *p,
        }
    }

    pub fn bit(&self, e: Element) -> bool {
        match self {
            RandomnessTape::Seeded { seed, p } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(e.index() as u64);
                rng.gen::<f64>() < 1.0 - p
            }
            RandomnessTape::Explicit { bits, .. } => bits.get(e.index()).copied().unwrap_or(true),
        }
    }
}
