use std::collections::VecDeque;

use super::{guard, ExactError, OptResult, BRUTE_FORCE_LIMIT};
use crate::instances::Graph;
use crate::matroid::{Element, ElementSet};

const FREE: usize = usize::MAX;

/// Hopcroft–Karp maximum matching. Graphs without a recorded bipartition
/// are 2-coloured first; odd cycles are an error.
pub fn max_bipartite_matching(graph: &Graph) -> Result<OptResult, ExactError> {
    let g = graph.with_bipartition()?;
    let left = g.left_count().expect("bipartition recorded");
    let right = g.vertex_count() - left;
    // adjacency keeps edge ids so the result maps back to elements
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); left];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v - left, e));
    }
    let mut mate_u = vec![FREE; left];
    let mut mate_v = vec![FREE; right];
    let mut edge_u = vec![FREE; left];
    let mut dist = vec![0usize; left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        let mut found = false;
        for u in 0..left {
            if mate_u[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                let w = mate_v[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; left];
        for u in 0..left {
            if mate_u[u] == FREE {
                augment(u, &adj, &mut mate_u, &mut mate_v, &mut edge_u, &mut dist, &mut next);
            }
        }
    }

    let set: ElementSet = (0..left)
        .filter(|&u| mate_u[u] != FREE)
        .map(|u| Element(edge_u[u]))
        .collect();
    Ok(OptResult::new(set, 0))
}

fn augment(
    u: usize,
    adj: &[Vec<(usize, usize)>],
    mate_u: &mut [usize],
    mate_v: &mut [usize],
    edge_u: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[u] < adj[u].len() {
        let (v, e) = adj[u][next[u]];
        next[u] += 1;
        let w = mate_v[v];
        let ok = w == FREE
            || (dist[w] == dist[u] + 1 && augment(w, adj, mate_u, mate_v, edge_u, dist, next));
        if ok {
            mate_u[u] = v;
            mate_v[v] = u;
            edge_u[u] = e;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Exhaustive maximum matching of any (not necessarily bipartite) graph.
pub fn brute_force_matching(graph: &Graph) -> Result<OptResult, ExactError> {
    guard("edge set", graph.edge_count(), BRUTE_FORCE_LIMIT)?;
    let mut used = vec![false; graph.vertex_count()];
    let mut chosen = Vec::new();
    let mut best = Vec::new();
    search(graph, 0, &mut used, &mut chosen, &mut best);
    Ok(OptResult::new(best.into_iter().collect(), 0))
}

fn search(g: &Graph, at: usize, used: &mut [bool], chosen: &mut Vec<Element>, best: &mut Vec<Element>) {
    if chosen.len() + (g.edge_count() - at) <= best.len() {
        return;
    }
    if at == g.edge_count() {
        *best = chosen.clone();
        return;
    }
    let (u, v) = g.edges()[at];
    if u != v && !used[u] && !used[v] {
        used[u] = true;
        used[v] = true;
        chosen.push(Element(at));
        search(g, at + 1, used, chosen, best);
        chosen.pop();
        used[u] = false;
        used[v] = false;
    }
    search(g, at + 1, used, chosen, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_bomb, gen_thick_z, GraphError};

    #[test]
    fn perfect_matching_graph() {
        let g = Graph::bipartite(4, 4, (0..4).map(|i| (i, 4 + i)).collect()).unwrap();
        assert_eq!(max_bipartite_matching(&g).unwrap().opt_size, 4);
    }

    #[test]
    fn thick_z_optimum() {
        for n in [1, 2, 7, 30] {
            let g = gen_thick_z(n, n).unwrap();
            let r = max_bipartite_matching(&g).unwrap();
            assert_eq!(r.opt_size, 2 * n);
            assert!(g.is_matching(r.opt_set.as_slice()));
        }
    }

    #[test]
    fn odd_cycle_rejected() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            max_bipartite_matching(&g).unwrap_err(),
            ExactError::Graph(GraphError::NotBipartite)
        );
        assert_eq!(brute_force_matching(&g).unwrap().opt_size, 1);
    }

    #[test]
    fn bomb_optimum_is_pendants() {
        let g = gen_bomb(4).unwrap();
        assert_eq!(brute_force_matching(&g).unwrap().opt_size, 4);
    }

    #[test]
    fn unlabelled_bipartite_graph_is_coloured() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(max_bipartite_matching(&g).unwrap().opt_size, 2);
    }
}
