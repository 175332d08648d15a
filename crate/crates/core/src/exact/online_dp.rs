//! Exact value of the best online algorithm on tiny instances.
//!
//! [`optimal_online_value`] models an algorithm that knows the graph only
//! up to isomorphism: arriving edges are reported with vertex names handed
//! out in order of first appearance, so it cannot tell which edge of the
//! graph it is looking at beyond what the observed structure reveals. The
//! posterior over embeddings of the observation into the graph is exact,
//! and backward induction over (observation, matched observed vertices)
//! gives the optimum. Randomising never helps a Bayesian decision maker, so
//! the deterministic optimum is the optimum over all online algorithms.
//!
//! [`optimal_online_value_labeled`] is the weaker adversary model in which
//! the algorithm recognises every element: plain induction over (remaining
//! elements, picked elements).

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Zero};

use super::{guard, ExactError, ONLINE_DP_LIMIT};
use crate::instances::Graph;
use crate::matroid::{Element, Matroid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnlineDPResult {
    pub expected_value: BigRational,
    pub state_count: usize,
}

const UNSEEN: u8 = u8::MAX;

#[derive(Clone)]
struct Embedding {
    /// observed name -> graph vertex
    map: Vec<u8>,
    used: u32,
    weight: u64,
}

struct Node {
    /// Edges observed so far.
    depth: usize,
    /// Total embedding weight. The probability of reaching the node is
    /// `weight / (2^t m!/(m-t)!)` at depth `t`.
    weight: u128,
    /// (child node, observed endpoints of the arriving edge)
    children: Vec<(usize, (u8, u8))>,
}

struct Explorer<'g> {
    graph: &'g Graph,
    index: HashMap<Vec<(u8, u8)>, usize>,
    nodes: Vec<Node>,
}

impl Explorer<'_> {
    fn explore(&mut self, obs: Vec<(u8, u8)>, embeddings: Vec<Embedding>) -> usize {
        if let Some(&id) = self.index.get(&obs) {
            return id;
        }
        let m = self.graph.edge_count();
        let t = obs.len();
        let mut children = Vec::new();
        if t < m {
            let names = embeddings[0].map.len() as u8;
            let mut groups: Vec<((u8, u8), Vec<Embedding>)> = Vec::new();
            let mut slot: HashMap<(u8, u8), usize> = HashMap::new();
            let mut push = |key: (u8, u8), emb: Embedding| {
                let i = *slot.entry(key).or_insert_with(|| {
                    groups.push((key, Vec::new()));
                    groups.len() - 1
                });
                groups[i].1.push(emb);
            };
            let mut inverse = vec![UNSEEN; self.graph.vertex_count()];
            for emb in &embeddings {
                inverse.iter_mut().for_each(|x| *x = UNSEEN);
                for (name, &v) in emb.map.iter().enumerate() {
                    inverse[v as usize] = name as u8;
                }
                for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
                    if emb.used & (1 << e) != 0 {
                        continue;
                    }
                    let used = emb.used | (1 << e);
                    let (iu, iv) = (inverse[u], inverse[v]);
                    let extend = |extra: &[usize], weight: u64| {
                        let mut map = emb.map.clone();
                        map.extend(extra.iter().map(|&x| x as u8));
                        Embedding { map, used, weight }
                    };
                    match (iu != UNSEEN, iv != UNSEEN) {
                        (true, true) => push((iu.min(iv), iu.max(iv)), extend(&[], 2 * emb.weight)),
                        (true, false) => push((iu, names), extend(&[v], 2 * emb.weight)),
                        (false, true) => push((iv, names), extend(&[u], 2 * emb.weight)),
                        (false, false) => {
                            // the observer cannot orient an edge between two new vertices
                            push((names, names + 1), extend(&[u, v], emb.weight));
                            push((names, names + 1), extend(&[v, u], emb.weight));
                        }
                    }
                }
            }
            for (key, embs) in groups {
                let mut child_obs = obs.clone();
                child_obs.push(key);
                let id = self.explore(child_obs, embs);
                children.push((id, key));
            }
        }
        let weight = embeddings.iter().map(|e| u128::from(e.weight)).sum();
        let id = self.nodes.len();
        self.nodes.push(Node {
            depth: t,
            weight,
            children,
        });
        self.index.insert(obs, id);
        id
    }
}

/// `2^j j!`, the number of oriented orderings of `j` remaining edges.
fn scale(j: usize) -> u128 {
    (1..=j as u128).map(|i| 2 * i).product()
}

/// Expected future matches from `node`, scaled by `weight · scale(m - t)` so
/// every branch probability cancels into integers.
fn solve(nodes: &[Node], m: usize, memo: &mut HashMap<(usize, u32), u128>, node: usize, matched: u32) -> u128 {
    if let Some(&v) = memo.get(&(node, matched)) {
        return v;
    }
    let mut total = 0;
    for &(child, (a, b)) in &nodes[node].children {
        let skip = solve(nodes, m, memo, child, matched);
        let bits = (1u32 << a) | (1u32 << b);
        total += if a != b && matched & bits == 0 {
            let c = &nodes[child];
            let take = c.weight * scale(m - c.depth) + solve(nodes, m, memo, child, matched | bits);
            take.max(skip)
        } else {
            skip
        };
    }
    memo.insert((node, matched), total);
    total
}

/// Expected size of the matching built by the best online algorithm on
/// `graph` under uniformly random edge arrival, when vertices are anonymous.
pub fn optimal_online_value(graph: &Graph) -> Result<OnlineDPResult, ExactError> {
    guard("edge set", graph.edge_count(), ONLINE_DP_LIMIT)?;
    guard("vertex set", graph.vertex_count(), 2 * ONLINE_DP_LIMIT)?;
    let mut explorer = Explorer {
        graph,
        index: HashMap::new(),
        nodes: Vec::new(),
    };
    let root = explorer.explore(
        Vec::new(),
        vec![Embedding {
            map: Vec::new(),
            used: 0,
            weight: 1,
        }],
    );
    let m = graph.edge_count();
    let mut memo = HashMap::new();
    let scaled = solve(&explorer.nodes, m, &mut memo, root, 0);
    let value = BigRational::new(BigInt::from(scaled), BigInt::from(scale(m)));
    Ok(OnlineDPResult {
        expected_value: value,
        state_count: memo.len(),
    })
}

/// Online optimum when the algorithm recognises each arriving element.
/// Picks must stay independent in every matroid of `matroids`.
pub fn optimal_online_value_labeled<M: Matroid + ?Sized>(
    matroids: &[&M],
    ground: &[Element],
) -> Result<OnlineDPResult, ExactError> {
    guard("ground set", ground.len(), ONLINE_DP_LIMIT)?;
    let full = (1u32 << ground.len()) - 1;
    let mut memo = HashMap::new();
    let value = labeled(matroids, ground, &mut memo, full, 0)?;
    Ok(OnlineDPResult {
        expected_value: value,
        state_count: memo.len(),
    })
}

fn labeled<M: Matroid + ?Sized>(
    ms: &[&M],
    ground: &[Element],
    memo: &mut HashMap<(u32, u32), BigRational>,
    remaining: u32,
    picked: u32,
) -> Result<BigRational, ExactError> {
    if remaining == 0 {
        return Ok(BigRational::zero());
    }
    if let Some(v) = memo.get(&(remaining, picked)) {
        return Ok(v.clone());
    }
    let picked_set: Vec<Element> = (0..ground.len())
        .filter(|i| picked & (1 << i) != 0)
        .map(|i| ground[i])
        .collect();
    let mut total = BigRational::zero();
    for i in (0..ground.len()).filter(|i| remaining & (1 << i) != 0) {
        let rest = remaining & !(1 << i);
        let skip = labeled(ms, ground, memo, rest, picked)?;
        let mut with = picked_set.clone();
        with.push(ground[i]);
        let mut feasible = true;
        for m in ms {
            if !m.is_independent(&with)? {
                feasible = false;
                break;
            }
        }
        total += if feasible {
            let take = BigRational::one() + labeled(ms, ground, memo, rest, picked | (1 << i))?;
            take.max(skip)
        } else {
            skip
        };
    }
    let value = total / BigRational::from_integer(BigInt::from(remaining.count_ones()));
    memo.insert((remaining, picked), value.clone());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_joined_thick_z, gen_thick_z};
    use crate::matroid::UniformMatroid;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn single_edge() {
        let g = Graph::bipartite(1, 1, vec![(0, 1)]).unwrap();
        assert_eq!(optimal_online_value(&g).unwrap().expected_value, q(1, 1));
        let u = UniformMatroid::free(1);
        let ms: [&dyn Matroid; 1] = [&u];
        let r = optimal_online_value_labeled(&ms, &[Element(0)]).unwrap();
        assert_eq!(r.expected_value, q(1, 1));
    }

    #[test]
    fn path_of_three_edges() {
        // the middle edge is recognisable only once a neighbour has been seen
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]);
        let v = optimal_online_value(&g).unwrap().expected_value;
        assert!(v > q(1, 1) && v < q(2, 1), "{v}");
    }

    #[test]
    fn thick_z_one_is_five_thirds() {
        let g = gen_thick_z(1, 1).unwrap();
        assert_eq!(optimal_online_value(&g).unwrap().expected_value, q(5, 3));
    }

    #[test]
    fn labels_help() {
        let g = gen_thick_z(1, 1).unwrap();
        let (a, b) = g.partition_encoding().unwrap();
        let ms: [&dyn Matroid; 2] = [&a, &b];
        let ground: Vec<Element> = (0..3).map(Element).collect();
        // knowing which edge is the diagonal, skip it and take both others
        let r = optimal_online_value_labeled(&ms, &ground).unwrap();
        assert_eq!(r.expected_value, q(2, 1));
    }

    #[test]
    fn joined_thick_z_below_bound() {
        let g = gen_joined_thick_z();
        let v = optimal_online_value(&g).unwrap().expected_value;
        assert!(v / q(4, 1) <= q(69, 84));
    }

    #[test]
    fn guard_rejects_large_graphs() {
        let g = gen_thick_z(3, 3).unwrap();
        assert!(matches!(
            optimal_online_value(&g),
            Err(ExactError::SizeGuard { .. })
        ));
    }
}
