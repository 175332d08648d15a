//! Seeded generators for every instance family used in the experiments.
//!
//! Generation is a pure function of [`InstanceSpec`]. Graph families carry
//! the graph and, when bipartite, its partition-matroid encoding; matroid
//! families carry only the matroids.

mod graph;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use graph::{Graph, GraphError};

use crate::matroid::{AnyMatroid, Element, ElementSet, GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid};

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(msg: impl Into<String>) -> InstanceError {
    InstanceError::Parameters(msg.into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    ThickZ { n1: usize, n2: usize },
    BalancedThickZ { n: usize },
    JoinedThickZ,
    Bomb { n: usize },
    RegularBipartite { n: usize, d: usize },
    ErBipartite { n: usize, prob: f64 },
    RandomPartitionPair {
        m: usize,
        classes: usize,
        #[serde(default = "one")]
        max_capacity: usize,
    },
    RandomGraphicPair { m: usize, vertices: usize },
    KUniformFamily { ranks: Vec<usize>, m: usize },
    /// `k`-dimensional Thick-Z: `k` groups of `n` disjoint optimal elements
    /// plus a complete block of `n^k` elements, each meeting `k` optimal
    /// elements from different groups. `k = 2` is the balanced Thick-Z.
    HyperThickZ { k: usize, n: usize },
}

fn one() -> usize {
    1
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ThickZ { .. } => "thick_z",
            Family::BalancedThickZ { .. } => "balanced_thick_z",
            Family::JoinedThickZ => "joined_thick_z",
            Family::Bomb { .. } => "bomb",
            Family::RegularBipartite { .. } => "regular_bipartite",
            Family::ErBipartite { .. } => "er_bipartite",
            Family::RandomPartitionPair { .. } => "random_partition_pair",
            Family::RandomGraphicPair { .. } => "random_graphic_pair",
            Family::KUniformFamily { .. } => "k_uniform_family",
            Family::HyperThickZ { .. } => "hyper_thick_z",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        InstanceSpec { family, seed }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub ground_size: usize,
    pub graph: Option<Graph>,
    pub matroids: Vec<AnyMatroid>,
    /// A maximum solution, when the construction makes one obvious.
    pub known_opt: Option<ElementSet>,
}

impl Instance {
    pub fn matroid_refs(&self) -> Vec<&dyn Matroid> {
        self.matroids.iter().map(|m| m as &dyn Matroid).collect()
    }

    fn from_bipartite(spec: InstanceSpec, graph: Graph, known_opt: Option<ElementSet>) -> Self {
        let (m1, m2) = graph.partition_encoding().expect("bipartite generator");
        Instance {
            spec,
            ground_size: graph.edge_count(),
            graph: Some(graph),
            matroids: vec![m1.into(), m2.into()],
            known_opt,
        }
    }
}

pub fn generate(spec: &InstanceSpec) -> Result<Instance, InstanceError> {
    let spec = spec.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(match spec.family.clone() {
        Family::ThickZ { n1, n2 } => {
            let g = gen_thick_z(n1, n2)?;
            Instance::from_bipartite(spec, g, Some(ElementSet::from_indices(0..n1 + n2)))
        }
        Family::BalancedThickZ { n } => {
            let g = gen_thick_z(n, n)?;
            Instance::from_bipartite(spec, g, Some(ElementSet::from_indices(0..2 * n)))
        }
        Family::JoinedThickZ => {
            let g = gen_joined_thick_z();
            Instance::from_bipartite(spec, g, Some(ElementSet::from_indices([0, 1, 3, 4])))
        }
        Family::Bomb { n } => {
            let g = gen_bomb(n)?;
            let clique = n * (n - 1) / 2;
            Instance {
                spec,
                ground_size: g.edge_count(),
                graph: Some(g),
                matroids: Vec::new(),
                known_opt: Some(ElementSet::from_indices(clique..clique + n)),
            }
        }
        Family::RegularBipartite { n, d } => {
            let g = gen_regular_bipartite(n, d, &mut rng)?;
            // first matching round is perfect
            Instance::from_bipartite(spec, g, Some(ElementSet::from_indices(0..n)))
        }
        Family::ErBipartite { n, prob } => {
            let g = gen_er_bipartite(n, prob, &mut rng)?;
            Instance::from_bipartite(spec, g, None)
        }
        Family::RandomPartitionPair {
            m,
            classes,
            max_capacity,
        } => {
            let (a, b) = gen_random_partition_pair(m, classes, max_capacity, &mut rng)?;
            Instance {
                spec,
                ground_size: m,
                graph: None,
                matroids: vec![a.into(), b.into()],
                known_opt: None,
            }
        }
        Family::RandomGraphicPair { m, vertices } => {
            let (a, b) = gen_random_graphic_pair(m, vertices, &mut rng)?;
            Instance {
                spec,
                ground_size: m,
                graph: None,
                matroids: vec![a.into(), b.into()],
                known_opt: None,
            }
        }
        Family::KUniformFamily { ranks, m } => {
            let ms = gen_k_uniform_family(&ranks, m)?;
            let r = ranks.iter().copied().min().unwrap_or(0).min(m);
            Instance {
                spec,
                ground_size: m,
                graph: None,
                matroids: ms.into_iter().map(AnyMatroid::from).collect(),
                known_opt: Some(ElementSet::from_indices(0..r)),
            }
        }
        Family::HyperThickZ { k, n } => {
            let ms = gen_hyper_thick_z(k, n)?;
            Instance {
                spec,
                ground_size: ms[0].ground_size(),
                graph: None,
                matroids: ms.into_iter().map(AnyMatroid::from).collect(),
                known_opt: Some(ElementSet::from_indices(0..k * n)),
            }
        }
    })
}

/// Thick-Z with `|U1| = |V1| = n1` and `|U2| = |V2| = n2`.
///
/// Vertices: `U1 = 0..n1`, `U2 = n1..n1+n2`, then `V1`, `V2` after them.
/// Edge ids: the `U1–V1` matching, the `U2–V2` matching, then the complete
/// `U2 × V1` block row-major by `U2` vertex.
pub fn gen_thick_z(n1: usize, n2: usize) -> Result<Graph, InstanceError> {
    if n1 == 0 || n2 == 0 {
        return Err(bad("thick-z sides must be non-empty"));
    }
    let left = n1 + n2;
    let mut edges = Vec::with_capacity(n1 + n2 + n1 * n2);
    edges.extend((0..n1).map(|i| (i, left + i)));
    edges.extend((0..n2).map(|j| (n1 + j, left + n1 + j)));
    for j in 0..n2 {
        for i in 0..n1 {
            edges.push((n1 + j, left + i));
        }
    }
    Ok(Graph::bipartite(left, left, edges)?)
}

/// Two balanced Thick-Z graphs with `n = 1`, joined by one edge between the
/// degree-two `U` vertex of the first and the degree-two `V` vertex of the
/// second. Seven edges; the four matching edges (ids 0, 1, 3, 4) are optimal.
pub fn gen_joined_thick_z() -> Graph {
    // U: z1u1=0 z1u2=1 z2u1=2 z2u2=3, V: z1v1=4 z1v2=5 z2v1=6 z2v2=7
    let edges = vec![(0, 4), (1, 5), (1, 4), (2, 6), (3, 7), (3, 6), (1, 6)];
    Graph::bipartite(4, 4, edges).expect("fixed bipartite graph")
}

/// Complete graph `K_n` with a pendant edge on every vertex. Clique edges
/// come first in lexicographic order, then the pendant `(i, n + i)`.
pub fn gen_bomb(n: usize) -> Result<Graph, InstanceError> {
    if n < 2 {
        return Err(bad("bomb graph needs n >= 2"));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2 + n);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    edges.extend((0..n).map(|i| (i, n + i)));
    Ok(Graph::new(2 * n, edges))
}

/// Union of `d` uniformly random perfect matchings between two sides of `n`
/// vertices, resampling any matching that would repeat an edge.
pub fn gen_regular_bipartite<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph, InstanceError> {
    if n == 0 || d == 0 || d > n {
        return Err(bad(format!("need 1 <= d <= n, got n={n} d={d}")));
    }
    const ROUND_TRIES: usize = 1000;
    'restart: loop {
        let mut seen = vec![vec![false; n]; n];
        let mut edges = Vec::with_capacity(n * d);
        for _ in 0..d {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut placed = false;
            for _ in 0..ROUND_TRIES {
                perm.shuffle(rng);
                if perm.iter().enumerate().all(|(u, &v)| !seen[u][v]) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'restart;
            }
            for (u, &v) in perm.iter().enumerate() {
                seen[u][v] = true;
                edges.push((u, n + v));
            }
        }
        return Ok(Graph::bipartite(n, n, edges)?);
    }
}

pub fn gen_er_bipartite<R: Rng>(n: usize, prob: f64, rng: &mut R) -> Result<Graph, InstanceError> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(bad(format!("edge probability {prob} outside [0,1]")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(prob) {
                edges.push((u, n + v));
            }
        }
    }
    Ok(Graph::bipartite(n, n, edges)?)
}

/// Two partition matroids with independently uniform class assignments and
/// capacities drawn from `1..=max_capacity`.
pub fn gen_random_partition_pair<R: Rng>(
    m: usize,
    classes: usize,
    max_capacity: usize,
    rng: &mut R,
) -> Result<(PartitionMatroid, PartitionMatroid), InstanceError> {
    if classes == 0 || max_capacity == 0 {
        return Err(bad("need at least one class and capacity >= 1"));
    }
    let mut one = || {
        let class_of = (0..m).map(|_| rng.gen_range(0..classes)).collect();
        let caps = (0..classes).map(|_| rng.gen_range(1..=max_capacity)).collect();
        PartitionMatroid::new(class_of, caps).expect("classes in range")
    };
    let a = one();
    let b = one();
    Ok((a, b))
}

/// Two graphic matroids over random loopless multigraphs sharing the edge
/// ids `0..m`.
pub fn gen_random_graphic_pair<R: Rng>(
    m: usize,
    vertices: usize,
    rng: &mut R,
) -> Result<(GraphicMatroid, GraphicMatroid), InstanceError> {
    if vertices < 2 {
        return Err(bad("graphic pair needs at least two vertices"));
    }
    let mut one = || {
        let edges = (0..m)
            .map(|_| {
                let u = rng.gen_range(0..vertices);
                let mut v = rng.gen_range(0..vertices - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            })
            .collect();
        GraphicMatroid::new(vertices, edges).expect("vertices in range")
    };
    let a = one();
    let b = one();
    Ok((a, b))
}

pub fn gen_k_uniform_family(ranks: &[usize], m: usize) -> Result<Vec<UniformMatroid>, InstanceError> {
    if ranks.is_empty() {
        return Err(bad("need at least one rank"));
    }
    Ok(ranks.iter().map(|&k| UniformMatroid::new(m, k)).collect())
}

/// `k` partition matroids (capacity one) encoding the `k`-dimensional
/// Thick-Z. Ids `g*n + i` are the optimal elements of group `g`; block
/// elements follow, one per tuple `(i_0, .., i_{k-1})` in row-major order,
/// and coordinate `j` of a block element sits on the vertex of group
/// `(j + 1) mod k`.
pub fn gen_hyper_thick_z(k: usize, n: usize) -> Result<Vec<PartitionMatroid>, InstanceError> {
    if k < 2 || n == 0 {
        return Err(bad("hyper thick-z needs k >= 2 and n >= 1"));
    }
    let block = n
        .checked_pow(k as u32)
        .filter(|&b| b <= 10_000_000)
        .ok_or_else(|| bad("block too large"))?;
    let m = k * n + block;
    let mut classes = vec![Vec::with_capacity(m); k];
    for cls in classes.iter_mut() {
        cls.extend(0..k * n);
    }
    let mut tuple = vec![0usize; k];
    for _ in 0..block {
        for (j, cls) in classes.iter_mut().enumerate() {
            cls.push(((j + 1) % k) * n + tuple[j]);
        }
        // increment, last coordinate fastest
        for pos in (0..k).rev() {
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
    Ok(classes
        .into_iter()
        .map(|c| PartitionMatroid::new(c, vec![1; k * n]).expect("classes in range"))
        .collect())
}

/// Elements of a generated instance, for iteration.
pub fn ground(instance: &Instance) -> Vec<Element> {
    (0..instance.ground_size).map(Element).collect()
}
