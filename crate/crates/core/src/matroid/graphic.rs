use super::{check_domain, CallCounter, Element, Incremental, Matroid, MatroidError, MatroidKind};

/// Cycle matroid of a multigraph: an edge set is independent iff it is a
/// forest. Element `e` is the edge `endpoints[e]`.
#[derive(Clone, Debug)]
pub struct GraphicMatroid {
    vertex_count: usize,
    endpoints: Vec<(usize, usize)>,
    counter: CallCounter,
}

impl GraphicMatroid {
    pub fn new(vertex_count: usize, endpoints: Vec<(usize, usize)>) -> Result<Self, MatroidError> {
        if let Some(&(u, v)) = endpoints
            .iter()
            .find(|&&(u, v)| u >= vertex_count || v >= vertex_count)
        {
            return Err(MatroidError::Precondition(format!(
                "edge ({u},{v}) references a vertex outside 0..{vertex_count}"
            )));
        }
        Ok(GraphicMatroid {
            vertex_count,
            endpoints,
            counter: CallCounter::default(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn endpoints(&self, e: Element) -> (usize, usize) {
        self.endpoints[e.index()]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    fn evaluate(&self, set: &[Element]) -> bool {
        let mut dsu = Dsu::new(self.vertex_count);
        set.iter().all(|e| {
            let (u, v) = self.endpoints[e.index()];
            dsu.union(u, v)
        })
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.endpoints.len()
    }

    fn kind(&self) -> MatroidKind {
        MatroidKind::Graphic
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
        Box::new(ForestState {
            matroid: self,
            dsu: Dsu::new(self.vertex_count),
            members: Vec::new(),
        })
    }
}

struct ForestState<'a> {
    matroid: &'a GraphicMatroid,
    dsu: Dsu,
    members: Vec<Element>,
}

impl Incremental for ForestState<'_> {
    fn can_add(&mut self, e: Element) -> bool {
        self.matroid.counter.bump();
        let (u, v) = self.matroid.endpoints[e.index()];
        self.dsu.find(u) != self.dsu.find(v)
    }

    fn push(&mut self, e: Element) {
        let (u, v) = self.matroid.endpoints[e.index()];
        self.dsu.union(u, v);
        self.members.push(e);
    }

    fn members(&self) -> &[Element] {
        &self.members
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> GraphicMatroid {
        GraphicMatroid::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn triangle_is_dependent() {
        let m = triangle();
        assert!(m.is_independent(&[Element(0), Element(1)]).unwrap());
        assert!(!m.is_independent(&[Element(0), Element(1), Element(2)]).unwrap());
    }

    #[test]
    fn self_loop_is_dependent() {
        let m = GraphicMatroid::new(2, vec![(1, 1), (0, 1)]).unwrap();
        assert!(!m.is_independent(&[Element(0)]).unwrap());
        assert!(m.is_independent(&[Element(1)]).unwrap());
    }

    #[test]
    fn parallel_edges_form_a_circuit() {
        let m = GraphicMatroid::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(!m.is_independent(&[Element(0), Element(1)]).unwrap());
    }

    #[test]
    fn bad_vertex_is_rejected() {
        assert!(GraphicMatroid::new(2, vec![(0, 2)]).is_err());
    }
}
