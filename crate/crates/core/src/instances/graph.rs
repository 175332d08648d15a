use std::fmt::Write as _;

use thiserror::Error;

use crate::matroid::{Element, PartitionMatroid};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph has no bipartition")]
    NoBipartition,
    #[error("edge {edge} = ({u},{v}) does not cross the bipartition at {left}")]
    EdgeInsideSide {
        edge: usize,
        u: usize,
        v: usize,
        left: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Undirected multigraph whose edge ids are ground-set elements.
///
/// When `left` is set the graph is bipartite with sides `U = 0..left` and
/// `V = left..vertex_count`, and every edge is stored as `(u, v)` with
/// `u ∈ U`, `v ∈ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    left: Option<usize>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(
            edges.iter().all(|&(u, v)| u < vertex_count && v < vertex_count),
            "edge endpoint out of range"
        );
        Graph {
            vertex_count,
            edges,
            left: None,
        }
    }

    /// Bipartite graph with `left` vertices on the `U` side. Edges are
    /// reoriented so the `U` endpoint comes first.
    pub fn bipartite(
        left: usize,
        right: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = left + right;
        let mut oriented = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert!(u < n && v < n, "edge endpoint out of range");
            match (u < left, v < left) {
                (true, false) => oriented.push((u, v)),
                (false, true) => oriented.push((v, u)),
                _ => return Err(GraphError::EdgeInsideSide { edge: i, u, v, left }),
            }
        }
        Ok(Graph {
            vertex_count: n,
            edges: oriented,
            left: Some(left),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: Element) -> (usize, usize) {
        self.edges[e.index()]
    }

    pub fn left_count(&self) -> Option<usize> {
        self.left
    }

    pub fn is_bipartite_labelled(&self) -> bool {
        self.left.is_some()
    }

    /// Finds a bipartition by 2-colouring when none is recorded.
    pub fn with_bipartition(&self) -> Result<Graph, GraphError> {
        if self.left.is_some() {
            return Ok(self.clone());
        }
        let n = self.vertex_count;
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            if u == v {
                return Err(GraphError::NotBipartite);
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut colour = vec![None; n];
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let c = colour[x].unwrap();
                for &y in &adj[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!c);
                            stack.push(y);
                        }
                        Some(cy) if cy == c => return Err(GraphError::NotBipartite),
                        _ => {}
                    }
                }
            }
        }
        // relabel: colour false first
        let mut new_id = vec![0; n];
        let mut left = 0;
        for v in 0..n {
            if colour[v] == Some(false) {
                new_id[v] = left;
                left += 1;
            }
        }
        let mut right = 0;
        for v in 0..n {
            if colour[v] == Some(true) {
                new_id[v] = left + right;
                right += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        Graph::bipartite(left, right, edges)
    }

    /// Whether `set` is a matching (no two edges share a vertex, no loops).
    pub fn is_matching(&self, set: &[Element]) -> bool {
        let mut used = vec![false; self.vertex_count];
        for &e in set {
            let (u, v) = self.edges[e.index()];
            if u == v || used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    /// Matching as a two-matroid intersection: `M1` partitions edges by
    /// their `U` endpoint, `M2` by their `V` endpoint, all capacities one.
    pub fn partition_encoding(&self) -> Result<(PartitionMatroid, PartitionMatroid), GraphError> {
        let left = self.left.ok_or(GraphError::NoBipartition)?;
        let right = self.vertex_count - left;
        let by_u: Vec<usize> = self.edges.iter().map(|&(u, _)| u).collect();
        let by_v: Vec<usize> = self.edges.iter().map(|&(_, v)| v - left).collect();
        let m1 = PartitionMatroid::new(by_u, vec![1; left]).expect("classes in range");
        let m2 = PartitionMatroid::new(by_v, vec![1; right]).expect("classes in range");
        Ok((m1, m2))
    }

    /// Text form: `graph m=<edges> n=<vertices>`, an optional
    /// `bipartition <u-count>` line, then `e <elem> <u> <v>` per edge.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph m={} n={}", self.edges.len(), self.vertex_count);
        if let Some(left) = self.left {
            let _ = writeln!(out, "bipartition {left}");
        }
        for (i, (u, v)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "e {i} {u} {v}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let perr = |line: usize, message: String| GraphError::Parse { line, message };
        let mut header: Option<(usize, usize)> = None;
        let mut left = None;
        let mut edges: Vec<Option<(usize, usize)>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tok: Vec<&str> = content.split_whitespace().collect();
            let int = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| perr(line, format!("expected an integer, found `{s}`")))
            };
            match tok[0] {
                "graph" => {
                    let field = |prefix: &str| {
                        tok.iter()
                            .find_map(|t| t.strip_prefix(prefix))
                            .ok_or_else(|| perr(line, format!("missing `{prefix}<int>`")))
                            .and_then(int)
                    };
                    let (m, n) = (field("m=")?, field("n=")?);
                    header = Some((m, n));
                    edges = vec![None; m];
                }
                "bipartition" if tok.len() == 2 => left = Some(int(tok[1])?),
                "e" if tok.len() == 4 => {
                    let (m, n) = header.ok_or_else(|| perr(line, "edge before header".into()))?;
                    let (e, u, v) = (int(tok[1])?, int(tok[2])?, int(tok[3])?);
                    if e >= m || u >= n || v >= n {
                        return Err(perr(line, format!("edge {e} ({u},{v}) out of range")));
                    }
                    if edges[e].replace((u, v)).is_some() {
                        return Err(perr(line, format!("edge {e} given twice")));
                    }
                }
                _ => return Err(perr(line, format!("unrecognised line `{content}`"))),
            }
        }
        let (_, n) = header.ok_or_else(|| perr(0, "missing `graph` header".into()))?;
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| perr(0, format!("edge {i} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        match left {
            Some(l) => Graph::bipartite(l, n - l, edges),
            None => Ok(Graph::new(n, edges)),
        }
    }
}
