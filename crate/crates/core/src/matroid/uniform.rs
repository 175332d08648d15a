use super::{check_domain, CallCounter, Element, Incremental, Matroid, MatroidError, MatroidKind};

/// Rank-`k` uniform matroid on `m` elements. `k >= m` is the free matroid.
#[derive(Clone, Debug)]
pub struct UniformMatroid {
    m: usize,
    k: usize,
    counter: CallCounter,
}

impl UniformMatroid {
    pub fn new(m: usize, k: usize) -> Self {
        UniformMatroid {
            m,
            k,
            counter: CallCounter::default(),
        }
    }

    pub fn free(m: usize) -> Self {
        Self::new(m, m)
    }

    pub fn rank_bound(&self) -> usize {
        self.k
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Uniform
    }

    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        check_domain(self, set)?;
        self.counter.bump();
        Ok(set.len() <= self.k)
    }

    fn calls(&self) -> u64 {
        self.counter.get()
    }

    fn incremental(&self) -> Box<dyn Incremental + '_> {
        Box::new(UniformState {
            matroid: self,
            members: Vec::new(),
        })
    }
}

struct UniformState<'a> {
    matroid: &'a UniformMatroid,
    members: Vec<Element>,
}

impl Incremental for UniformState<'_> {
    fn can_add(&mut self, _e: Element) -> bool {
        self.matroid.counter.bump();
        self.members.len() < self.matroid.k
    }

    fn push(&mut self, e: Element) {
        self.members.push(e);
    }

    fn members(&self) -> &[Element] {
        &self.members
    }
}
