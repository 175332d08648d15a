use super::{AlgoParams, ArrivalStream, Branch, OnlineError, PhaseState, RandomnessTape, RunResult};
use crate::instances::{Graph, GraphError};
use crate::matroid::{Element, ElementSet};

fn run(picked: Vec<Element>, phases: Option<PhaseState>, boundary: usize, branch: Branch) -> RunResult {
    RunResult {
        picked,
        phases,
        boundary,
        calls: Vec::new(),
        branch: Some(branch),
    }
}

/// Greedy matching on any graph: accept an edge when both endpoints are free.
pub fn greedy_matching(graph: &Graph, stream: &mut ArrivalStream) -> Result<RunResult, OnlineError> {
    let mut used = vec![false; graph.vertex_count()];
    let mut picked = Vec::new();
    let mut pos = 0;
    for e in stream.by_ref() {
        let (u, v) = graph.edge(e);
        if u != v && !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            picked.push(e);
        }
        pos += 1;
    }
    Ok(run(picked, None, pos, Branch::Greedy))
}

/// Phase one on a graph: greedy matching over the prefix. Returns
/// `(T_f, S, matched-by-T_f, occupied-by-S)`.
fn greedy_prefix(
    graph: &Graph,
    arrivals: impl Iterator<Item = Element>,
    tape: &RandomnessTape,
    picked: &mut Vec<Element>,
) -> (ElementSet, ElementSet, Vec<bool>, Vec<bool>) {
    let n = graph.vertex_count();
    let mut matched = vec![false; n];
    let mut kept = vec![false; n];
    let mut t_f = ElementSet::new();
    let mut s = ElementSet::new();
    for e in arrivals {
        let (u, v) = graph.edge(e);
        if u != v && !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            t_f.insert(e);
            if tape.bit(e) {
                kept[u] = true;
                kept[v] = true;
                s.insert(e);
                picked.push(e);
            }
        }
    }
    (t_f, s, matched, kept)
}

/// Marking-greedy on a bipartite graph.
///
/// Phase two keeps two disjoint subgraphs: `G1` has the edges from matched
/// `U` vertices to unmatched `V` vertices, `G2` the edges from unmatched
/// `U` vertices to matched `V` vertices (matched meaning covered by
/// `T_f`). Each grows its own matching `N_i` alongside `S`.
pub fn marking_greedy_bipartite(
    graph: &Graph,
    stream: &mut ArrivalStream,
    params: &AlgoParams,
    tape: &RandomnessTape,
) -> Result<RunResult, OnlineError> {
    params.validate()?;
    let left = graph.left_count().ok_or(GraphError::NoBipartition)?;
    let boundary = params.boundary(stream.len());
    let mut picked = Vec::new();
    let (t_f, s, matched, kept) = greedy_prefix(graph, stream.by_ref().take(boundary), tape, &mut picked);
    let mut occupied = [kept.clone(), kept];
    let mut n = vec![ElementSet::new(), ElementSet::new()];
    for e in stream.by_ref() {
        let (u, v) = graph.edge(e);
        debug_assert!(u < left && v >= left);
        let in_g1 = matched[u] && !matched[v];
        let in_g2 = !matched[u] && matched[v];
        if in_g1 && in_g2 {
            return Err(OnlineError::AmbiguousBranch(e));
        }
        let i = match (in_g1, in_g2) {
            (true, _) => 0,
            (_, true) => 1,
            _ => continue,
        };
        if !occupied[i][u] && !occupied[i][v] {
            occupied[i][u] = true;
            occupied[i][v] = true;
            n[i].insert(e);
            picked.push(e);
        }
    }
    Ok(run(picked, Some(PhaseState { t_f, s, n }), boundary, Branch::MarkingGreedy))
}

/// Marking-greedy on a general graph.
///
/// Phase one is greedy matching over the prefix; `U` is the set of vertices
/// it covers and `V` the rest. Both endpoints of a marked edge are marked.
/// Phase two only considers `(U, V)` edges whose `U` endpoint is marked and
/// grows one matching `N` alongside `S`.
pub fn marking_greedy_general(
    graph: &Graph,
    stream: &mut ArrivalStream,
    params: &AlgoParams,
    tape: &RandomnessTape,
) -> Result<RunResult, OnlineError> {
    params.validate()?;
    let boundary = params.boundary(stream.len());
    let mut picked = Vec::new();
    let (t_f, s, in_u, kept) = greedy_prefix(graph, stream.by_ref().take(boundary), tape, &mut picked);
    let marked: Vec<bool> = in_u.iter().zip(&kept).map(|(&u, &k)| u && !k).collect();
    let mut occupied = kept;
    let mut n = ElementSet::new();
    for e in stream.by_ref() {
        let (a, b) = graph.edge(e);
        let (x, y) = match (in_u[a], in_u[b]) {
            (true, false) => (a, b),
            (false, true) => (b, a),
            _ => continue,
        };
        if marked[x] && !occupied[x] && !occupied[y] {
            occupied[x] = true;
            occupied[y] = true;
            n.insert(e);
            picked.push(e);
        }
    }
    Ok(run(
        picked,
        Some(PhaseState { t_f, s, n: vec![n] }),
        boundary,
        Branch::MarkingGreedy,
    ))
}
