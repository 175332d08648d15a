use super::{check_domain, CallCounter, Element, Incremental, Matroid, MatroidError, MatroidKind};

/// `X` is independent iff every class holds at most `capacity[class]`
/// members of `X`.
#[derive(Clone, Debug)]
pub struct PartitionMatroid {
    class_of: Vec<usize>,
    capacity: Vec<usize>,
    counter: CallCounter,
}

impl PartitionMatroid {
    pub fn new(class_of: Vec<usize>, capacity: Vec<usize>) -> Result<Self, MatroidError> {
        if let Some(&c) = class_of.iter().find(|&&c| c >= capacity.len()) {
            return Err(MatroidError::Precondition(format!(
                "class {c} has no capacity (only {} classes)",
                capacity.len()
            )));
        }
        Ok(PartitionMatroid {
            class_of,
            capacity,
            counter: CallCounter::default(),
        })
    }

    /// Every class has capacity one; the usual encoding of one side of a
    /// bipartite matching problem.
    pub fn unit(class_of: Vec<usize>) -> Self {
        let classes = class_of.iter().max().map_or(0, |&c| c + 1);
        PartitionMatroid {
            class_of,
            capacity: vec![1; classes],
            counter: CallCounter::default(),
        }
    }

    pub fn class_of(&self, e: Element) -> usize {
        self.class_of[e.index()]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacity
    }

    fn evaluate(&self, set: &[Element]) -> bool {
        let mut used = vec![0usize; self.capacity.len()];
        for e in set {
            let c = self.class_of[e.index()];
            used[c] += 1;
            if used[c] > self.capacity[c] {
                return false;
            }
        }
        true
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.class_of.len()
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Partition
    }

    fn is_independent(&self, set: &[Element]) -> Result<bool, MatroidError> {
        check_domain(self, set)?;
        self.counter.bump();
        Ok(self.evaluate(set))
    }

    fn calls(&self) -> u64 {
        self.counter.get()
    }

    fn incremental(&self) -> Box<dyn Incremental + '_> {
        Box::new(PartitionState {
            matroid: self,
            used: vec![0; self.capacity.len()],
            members: Vec::new(),
        })
    }
}

struct PartitionState<'a> {
    matroid: &'a PartitionMatroid,
    used: Vec<usize>,
    members: Vec<Element>,
}

impl Incremental for PartitionState<'_> {
    fn can_add(&mut self, e: Element) -> bool {
        let c = self.matroid.class_of[e.index()];
        self.matroid.counter.bump();
        self.used[c] < self.matroid.capacity[c]
    }

    fn push(&mut self, e: Element) {
        self.used[self.matroid.class_of[e.index()]] += 1;
        self.members.push(e);
    }

    fn members(&self) -> &[Element] {
        &self.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_one_class_rejects_pair() {
        let m = PartitionMatroid::new(vec![0, 0], vec![1]).unwrap();
        assert!(m.is_independent(&[]).unwrap());
        assert!(m.is_independent(&[Element(0)]).unwrap());
        assert!(!m.is_independent(&[Element(0), Element(1)]).unwrap());
        assert_eq!(m.calls(), 3);
    }

    #[test]
    fn out_of_range_is_a_domain_error_and_not_counted() {
        let m = PartitionMatroid::unit(vec![0, 1]);
        let err = m.is_independent(&[Element(2)]).unwrap_err();
        assert_eq!(
            err,
            MatroidError::OutOfRange {
                element: 2,
                ground_size: 2
            }
        );
        assert_eq!(m.calls(), 0);
    }

    #[test]
    fn missing_capacity_is_rejected() {
        assert!(PartitionMatroid::new(vec![0, 3], vec![1, 1]).is_err());
    }

    #[test]
    fn incremental_counts_like_set_oracle() {
        let m = PartitionMatroid::new(vec![0, 0, 1, 0], vec![2, 1]).unwrap();
        let mut st = m.incremental();
        assert!(st.try_add(Element(0)));
        assert!(st.try_add(Element(1)));
        assert!(!st.try_add(Element(3)));
        assert!(st.try_add(Element(2)));
        assert_eq!(m.calls(), 4);
        assert_eq!(st.members(), &[Element(0), Element(1), Element(2)]);
    }
}
