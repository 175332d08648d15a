use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use super::{check_domain, CallCounter, Element, ElementSet, Incremental, Matroid, MatroidError, MatroidKind};

/// `M / T` for an independent `T`: ground set `E \ T`, and `X` is
/// independent iff `X ∪ T` is independent in `M`. Calls are answered (and
/// counted) by `M`.
#[derive(Debug, Clone)]
pub struct Contracted<M> {
    inner: M,
    contracted: ElementSet,
}

/// Contracts the independent set `t`. Costs one oracle call on `m`.
pub fn contract<M: Matroid>(m: M, t: &ElementSet) -> Result<Contracted<M>, MatroidError> {
    if !m.is_independent(t.as_slice())? {
        return Err(MatroidError::DependentContraction);
    }
    Ok(Contracted {
        inner: m,
        contracted: t.clone(),
    })
}

impl<M: Matroid> Contracted<M> {
    pub fn contracted_set(&self) -> &ElementSet {
        &self.contracted
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }
}

impl<M: Matroid> Matroid for Contracted<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn contains(&self, e: Element) -> bool {
        self.inner.contains(e) && !self.contracted.contains(e)
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Contracted
    }

    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        check_domain(self, set)?;
        let mut full = Vec::with_capacity(set.len() + self.contracted.len());
        full.extend_from_slice(set);
        full.extend(self.contracted.iter());
        self.inner.is_independent(&full)
    }

    fn calls(&self) -> u64 {
        self.inner.calls()
    }

    fn incremental(&self) -> Box<dyn Incremental + '_> {
        let mut base = self.inner.incremental();
        for e in self.contracted.iter() {
            base.push(e);
        }
        Box::new(ContractedState {
            base,
            members: Vec::new(),
        })
    }
}

struct ContractedState<'a> {
    base: Box<dyn Incremental + 'a>,
    members: Vec<Element>,
}

impl Incremental for ContractedState<'_> {
    fn can_add(&mut self, e: Element) -> bool {
        self.base.can_add(e)
    }

    fn push(&mut self, e: Element) {
        self.base.push(e);
        self.members.push(e);
    }

    fn members(&self) -> &[Element] {
        &self.members
    }
}

/// `M | F`: the same independence oracle with the ground set cut down to `F`.
#[derive(Debug, Clone)]
pub struct Restricted<M> {
    inner: M,
    keep: ElementSet,
}

/// Restricts `m` to `f`. No oracle calls; fails if `f` leaves the ground set.
pub fn restrict<M: Matroid>(m: M, f: &ElementSet) -> Result<Restricted<M>, MatroidError> {
    check_domain(&m, f.as_slice())?;
    Ok(Restricted {
        inner: m,
        keep: f.clone(),
    })
}

impl<M: Matroid> Matroid for Restricted<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn contains(&self, e: Element) -> bool {
        self.keep.contains(e) && self.inner.contains(e)
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Restricted
    }

    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        check_domain(self, set)?;
        self.inner.is_independent(set)
    }

    fn calls(&self) -> u64 {
        self.inner.calls()
    }

    fn incremental(&self) -> Box<dyn Incremental + '_> {
        Box::new(RestrictedState {
            keep: &self.keep,
            base: self.inner.incremental(),
        })
    }
}

struct RestrictedState<'a> {
    keep: &'a ElementSet,
    base: Box<dyn Incremental + 'a>,
}

impl Incremental for RestrictedState<'_> {
    fn can_add(&mut self, e: Element) -> bool {
        assert!(self.keep.contains(e), "element {e} outside the restriction");
        self.base.can_add(e)
    }

    fn push(&mut self, e: Element) {
        assert!(self.keep.contains(e), "element {e} outside the restriction");
        self.base.push(e);
    }

    fn members(&self) -> &[Element] {
        self.base.members()
    }
}

/// Gives a shared oracle a private call counter, e.g. one per trial when
/// trials run concurrently against the same instance. The wrapped oracle
/// keeps counting too.
#[derive(Debug, Clone)]
pub struct Counted<M> {
    inner: M,
    counter: CallCounter,
}

impl<M: Matroid> Counted<M> {
    pub fn new(inner: M) -> Self {
        Counted {
            inner,
            counter: CallCounter::default(),
        }
    }
}

impl<M: Matroid> Matroid for Counted<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn contains(&self, e: Element) -> bool {
        self.inner.contains(e)
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::CountingWrapper
    }

    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        let ok = self.inner.is_independent(set)?;
        self.counter.bump();
        Ok(ok)
    }

    fn calls(&self) -> u64 {
        self.counter.get()
    }

    fn incremental(&self) -> Box<dyn Incremental + '_> {
        Box::new(CountedState {
            counter: &self.counter,
            base: self.inner.incremental(),
        })
    }
}

struct CountedState<'a> {
    counter: &'a CallCounter,
    base: Box<dyn Incremental + 'a>,
}

impl Incremental for CountedState<'_> {
    fn can_add(&mut self, e: Element) -> bool {
        self.counter.bump();
        self.base.can_add(e)
    }

    fn push(&mut self, e: Element) {
        self.base.push(e);
    }

    fn members(&self) -> &[Element] {
        self.base.members()
    }
}

/// Which elements have arrived so far, shared between an arrival stream and
/// the [`Guarded`] oracles watching it.
#[derive(Debug)]
pub struct ArrivalLog {
    arrived: Vec<AtomicBool>,
    violations: AtomicU64,
}

impl ArrivalLog {
    pub fn new(m: usize) -> Arc<Self> {
        Arc::new(ArrivalLog {
            arrived: (0..m).map(|_| AtomicBool::new(false)).collect(),
            violations: AtomicU64::new(0),
        })
    }

    pub fn mark(&self, e: Element) {
        self.arrived[e.index()].store(true, Ordering::Relaxed);
    }

    pub fn has_arrived(&self, e: Element) -> bool {
        self.arrived
            .get(e.index())
            .is_some_and(|a| a.load(Ordering::Relaxed))
    }

    fn check(&self, e: Element) {
        if !self.has_arrived(e) {
            self.violations.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// Number of queries that mentioned an element before it arrived.
    pub fn violations(&self) -> u64 {
        self.violations.load(Ordering::Relaxed)
    }
}

/// Oracle that records every query touching an element which has not yet
/// arrived on the associated stream.
#[derive(Debug, Clone)]
pub struct Guarded<M> {
    inner: M,
    log: Arc<ArrivalLog>,
}

impl<M: Matroid> Guarded<M> {
    pub fn new(inner: M, log: Arc<ArrivalLog>) -> Self {
        Guarded { inner, log }
    }

    pub fn log(&self) -> &Arc<ArrivalLog> {
        &self.log
    }
}

impl<M: Matroid> Matroid for Guarded<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn contains(&self, e: Element) -> bool {
        self.inner.contains(e)
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Guarded
    }

    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        for &e in set {
            self.log.check(e);
        }
        self.inner.is_independent(set)
    }

    fn calls(&self) -> u64 {
        self.inner.calls()
    }

    fn incremental(&self) -> Box<dyn Incremental + '_> {
        Box::new(GuardedState {
            log: &self.log,
            base: self.inner.incremental(),
        })
    }
}

struct GuardedState<'a> {
    log: &'a ArrivalLog,
    base: Box<dyn Incremental + 'a>,
}

impl Incremental for GuardedState<'_> {
    fn can_add(&mut self, e: Element) -> bool {
        self.log.check(e);
        self.base.can_add(e)
    }

    fn push(&mut self, e: Element) {
        self.log.check(e);
        self.base.push(e);
    }

    fn members(&self) -> &[Element] {
        self.base.members()
    }
}
