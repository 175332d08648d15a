//! Independence oracles, concrete matroid families and the derived queries
//! (rank, span, circuit) every algorithm in this crate is written against.
//!
//! The only primitive is [`Matroid::is_independent`]. Each call is counted by
//! the oracle that answers it; wrappers such as [`Contracted`] delegate the
//! count to the matroid they wrap. [`Matroid::incremental`] hands out a
//! stateful "can I add `e`?" handle. Concrete families back it with counters
//! or union-find, but every `can_add` still costs exactly one counted call so
//! the accounting matches the set-based oracle.

mod element;
pub mod format;
mod graphic;
mod ops;
mod partition;
mod uniform;
mod wrappers;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element::{Element, ElementSet};
pub use graphic::GraphicMatroid;
pub use ops::{find_circuit, in_span, in_span_of_independent, is_common_independent, rank};
pub use partition::PartitionMatroid;
pub use uniform::UniformMatroid;
pub use wrappers::{contract, restrict, ArrivalLog, Contracted, Counted, Guarded, Restricted};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("element {element} is outside the ground set of size {ground_size}")]
    OutOfRange { element: usize, ground_size: usize },
    #[error("element {0} is not in the ground set of this oracle")]
    NotInGround(usize),
    #[error("set is dependent; contraction is only defined for independent sets")]
    DependentContraction,
    #[error("no circuit: {0}")]
    NoCircuit(&'static str),
    #[error("{what} has size {size}, above the limit of {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatroidKind {
    Partition,
    Uniform,
    Graphic,
    Contracted,
    Restricted,
    CountingWrapper,
    Guarded,
}

impl fmt::Display for MatroidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatroidKind::Partition => "partition",
            MatroidKind::Uniform => "uniform",
            MatroidKind::Graphic => "graphic",
            MatroidKind::Contracted => "contracted",
            MatroidKind::Restricted => "restricted",
            MatroidKind::CountingWrapper => "counting-wrapper",
            MatroidKind::Guarded => "guarded",
        };
        f.write_str(s)
    }
}

/// Monotone count of answered independence queries. Safe to bump from
/// concurrently running trials that share an oracle.
#[derive(Debug, Default)]
pub struct CallCounter(AtomicU64);

impl CallCounter {
    #[inline]
    pub fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

impl Clone for CallCounter {
    /// Clones start from zero: a copied oracle has answered nothing yet.
    fn clone(&self) -> Self {
        CallCounter::default()
    }
}

/// An independence oracle over ground set ids `[0, ground_size)`.
pub trait Matroid: Send + Sync + fmt::Debug {
    /// Upper bound on element ids this oracle may be asked about.
    fn ground_size(&self) -> usize;

    /// Whether `e` belongs to the ground set. Restrictions and contractions
    /// narrow this below `e < ground_size()`.
    fn contains(&self, e: Element) -> bool {
        e.index() < self.ground_size()
    }

    fn kind(&self) -> MatroidKind;

    /// Independence of `set`, which must not contain duplicates. Counts one
    /// call on the answering oracle.
    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError>;

    /// Number of independence queries answered so far.
    fn calls(&self) -> u64;

    /// A fresh incremental handle starting from the empty set.
    fn incremental(&self) -> Box<dyn Incremental + '_>;
}

/// Stateful handle for growing an independent set one element at a time.
pub trait Incremental {
    /// Is `members ∪ {e}` independent? One counted oracle call.
    fn can_add(&mut self, e: Element) -> bool;

    /// Appends `e` without a query. The caller guarantees the result stays
    /// independent (seeding from a set already known to be independent).
    fn push(&mut self, e: Element);

    fn members(&self) -> &[Element];

    fn try_add(&mut self, e: Element) -> bool {
        if self.can_add(e) {
            self.push(e);
            true
        } else {
            false
        }
    }
}

pub(crate) fn check_domain(m: &(impl Matroid + ?Sized), set: &[Element]) -> Result<(), MatroidError> {
    for &e in set {
        if e.index() >= m.ground_size() {
            return Err(MatroidError::OutOfRange {
                element: e.index(),
                ground_size: m.ground_size(),
            });
        }
        if !m.contains(e) {
            return Err(MatroidError::NotInGround(e.index()));
        }
    }
    Ok(())
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn contains(&self, e: Element) -> bool {
        (**self).contains(e)
    }
    fn kind(&self) -> MatroidKind {
        (**self).kind()
    }
    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        (**self).is_independent(set)
    }
    fn calls(&self) -> u64 {
        (**self).calls()
    }
    fn incremental(&self) -> Box<dyn Incremental + '_> {
        (**self).incremental()
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn contains(&self, e: Element) -> bool {
        (**self).contains(e)
    }
    fn kind(&self) -> MatroidKind {
        (**self).kind()
    }
    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        (**self).is_independent(set)
    }
    fn calls(&self) -> u64 {
        (**self).calls()
    }
    fn incremental(&self) -> Box<dyn Incremental + '_> {
        (**self).incremental()
    }
}

impl<M: Matroid + ?Sized> Matroid for Box<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn contains(&self, e: Element) -> bool {
        (**self).contains(e)
    }
    fn kind(&self) -> MatroidKind {
        (**self).kind()
    }
    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        (**self).is_independent(set)
    }
    fn calls(&self) -> u64 {
        (**self).calls()
    }
    fn incremental(&self) -> Box<dyn Incremental + '_> {
        (**self).incremental()
    }
}

/// One of the concrete families, as parsed from an instance file or built by
/// a generator.
#[derive(Clone, Debug)]
pub enum AnyMatroid {
    Partition(PartitionMatroid),
    Graphic(GraphicMatroid),
    Uniform(UniformMatroid),
}

impl AnyMatroid {
    fn inner(&self) -> &dyn Matroid {
        match self {
            AnyMatroid::Partition(m) => m,
            AnyMatroid::Graphic(m) => m,
            AnyMatroid::Uniform(m) => m,
        }
    }
}

impl Matroid for AnyMatroid {
    fn ground_size(&self) -> usize {
        self.inner().ground_size()
    }
    fn kind(&self) -> MatroidKind {
        self.inner().kind()
    }
    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        self.inner().is_independent(set)
    }
    fn calls(&self) -> u64 {
        self.inner().calls()
    }
    fn incremental(&self) -> Box<dyn Incremental + '_> {
        self.inner().incremental()
    }
}

impl From<PartitionMatroid> for AnyMatroid {
    fn from(m: PartitionMatroid) -> Self {
        AnyMatroid::Partition(m)
    }
}

impl From<GraphicMatroid> for AnyMatroid {
    fn from(m: GraphicMatroid) -> Self {
        AnyMatroid::Graphic(m)
    }
}

impl From<UniformMatroid> for AnyMatroid {
    fn from(m: UniformMatroid) -> Self {
        AnyMatroid::Uniform(m)
    }
}
