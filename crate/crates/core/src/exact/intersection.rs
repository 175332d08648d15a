use std::collections::VecDeque;

use super::{guard, ExactError, OptResult, BRUTE_FORCE_LIMIT};
use crate::matroid::{Element, ElementSet, Matroid};

fn total_calls<M: Matroid + ?Sized>(ms: &[&M]) -> u64 {
    ms.iter().map(|m| m.calls()).sum()
}

/// Maximum common independent set of `m1` and `m2` restricted to `ground`,
/// by repeated shortest augmenting paths in the exchange graph.
///
/// With current solution `I`: `y -> x` when `I - y + x ∈ M1`, `x -> y` when
/// `I - y + x ∈ M2`; sources are `x` with `I + x ∈ M1`, sinks `x` with
/// `I + x ∈ M2`. BFS visits sources and neighbours in ascending id order.
pub fn exact_intersection<M1, M2>(m1: &M1, m2: &M2, ground: &[Element]) -> Result<OptResult, ExactError>
where
    M1: Matroid + ?Sized,
    M2: Matroid + ?Sized,
{
    let before = m1.calls() + m2.calls();
    let mut pool: Vec<Element> = ground.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let mut current: Vec<Element> = Vec::new();

    loop {
        let inside: ElementSet = current.iter().copied().collect();
        let outside: Vec<Element> = pool.iter().copied().filter(|&e| !inside.contains(e)).collect();
        if outside.is_empty() {
            break;
        }
        let mut is_source = vec![false; outside.len()];
        let mut is_sink = vec![false; outside.len()];
        let mut plus = current.clone();
        plus.push(Element(0));
        for (i, &x) in outside.iter().enumerate() {
            *plus.last_mut().unwrap() = x;
            is_source[i] = m1.is_independent(&plus)?;
            is_sink[i] = m2.is_independent(&plus)?;
        }
        // direct augmentation
        if let Some(i) = (0..outside.len()).find(|&i| is_source[i] && is_sink[i]) {
            current.push(outside[i]);
            continue;
        }

        // node ids: 0..k for members of `current`, k.. for `outside`
        let k = current.len();
        let n = k + outside.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut swapped = current.clone();
        for (yi, &y) in current.iter().enumerate() {
            for (xi, &x) in outside.iter().enumerate() {
                swapped[yi] = x;
                if m1.is_independent(&swapped)? {
                    adj[yi].push(k + xi);
                }
                if m2.is_independent(&swapped)? {
                    adj[k + xi].push(yi);
                }
                swapped[yi] = y;
            }
        }
        let mut node_elem: Vec<Element> = current.clone();
        node_elem.extend(outside.iter().copied());
        for list in adj.iter_mut() {
            list.sort_by_key(|&v| node_elem[v]);
        }

        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        let mut sources: Vec<usize> = (0..outside.len()).filter(|&i| is_source[i]).map(|i| k + i).collect();
        sources.sort_by_key(|&v| node_elem[v]);
        for s in sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if v >= k && is_sink[v - k] {
                end = Some(v);
                break;
            }
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let Some(mut v) = end else { break };
        let mut path = vec![v];
        while let Some(p) = parent[v] {
            path.push(p);
            v = p;
        }
        let drop: ElementSet = path.iter().filter(|&&v| v < k).map(|&v| node_elem[v]).collect();
        current.retain(|e| !drop.contains(*e));
        current.extend(path.iter().filter(|&&v| v >= k).map(|&v| node_elem[v]));
    }

    let after = m1.calls() + m2.calls();
    Ok(OptResult::new(current.into_iter().collect(), after - before))
}

/// Exhaustive maximum common independent set over `ground`, for any number
/// of matroids. Branches include-then-exclude and prunes on dependence.
pub fn brute_force_intersection<M: Matroid + ?Sized>(
    matroids: &[&M],
    ground: &[Element],
) -> Result<OptResult, ExactError> {
    guard("ground set", ground.len(), BRUTE_FORCE_LIMIT)?;
    let before = total_calls(matroids);
    let mut best = Vec::new();
    let mut chosen = Vec::new();
    search(matroids, ground, 0, &mut chosen, &mut best)?;
    let after = total_calls(matroids);
    Ok(OptResult::new(best.into_iter().collect(), after - before))
}

fn search<M: Matroid + ?Sized>(
    ms: &[&M],
    ground: &[Element],
    at: usize,
    chosen: &mut Vec<Element>,
    best: &mut Vec<Element>,
) -> Result<(), ExactError> {
    if chosen.len() + (ground.len() - at) <= best.len() {
        return Ok(());
    }
    if at == ground.len() {
        *best = chosen.clone();
        return Ok(());
    }
    chosen.push(ground[at]);
    let mut ok = true;
    for m in ms {
        if !m.is_independent(chosen)? {
            ok = false;
            break;
        }
    }
    if ok {
        search(ms, ground, at + 1, chosen, best)?;
    }
    chosen.pop();
    search(ms, ground, at + 1, chosen, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_thick_z;
    use crate::matroid::{GraphicMatroid, PartitionMatroid, UniformMatroid};

    fn all(m: usize) -> Vec<Element> {
        (0..m).map(Element).collect()
    }

    #[test]
    fn uniform_pair_is_min_rank() {
        let a = UniformMatroid::new(10, 3);
        let b = UniformMatroid::new(10, 5);
        assert_eq!(exact_intersection(&a, &b, &all(10)).unwrap().opt_size, 3);
    }

    #[test]
    fn thick_z_needs_augmentation() {
        for n in 1..5 {
            let g = gen_thick_z(n, n).unwrap();
            let (a, b) = g.partition_encoding().unwrap();
            // block elements first, so early greedy choices are wrong
            let mut order = all(g.edge_count());
            order.reverse();
            let r = exact_intersection(&a, &b, &order).unwrap();
            assert_eq!(r.opt_size, 2 * n);
            assert!(r.oracle_calls > 0);
        }
    }

    #[test]
    fn matches_brute_force_on_graphic_pair() {
        let a = GraphicMatroid::new(3, vec![(0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
        let b = PartitionMatroid::unit(vec![0, 0, 1, 2]);
        let ex = exact_intersection(&a, &b, &all(4)).unwrap();
        let ms: [&dyn Matroid; 2] = [&a, &b];
        let bf = brute_force_intersection(&ms, &all(4)).unwrap();
        assert_eq!(ex.opt_size, bf.opt_size);
        assert_eq!(bf.opt_size, 2);
    }

    #[test]
    fn brute_force_edges() {
        let u = UniformMatroid::free(1);
        let ms: [&dyn Matroid; 2] = [&u, &u];
        assert_eq!(brute_force_intersection(&ms, &[]).unwrap().opt_size, 0);
        assert_eq!(brute_force_intersection(&ms, &all(1)).unwrap().opt_size, 1);
        let big = UniformMatroid::free(21);
        let ms: [&dyn Matroid; 1] = [&big];
        assert!(matches!(
            brute_force_intersection(&ms, &all(21)),
            Err(ExactError::SizeGuard { .. })
        ));
    }
}
