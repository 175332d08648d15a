use serde::{Deserialize, Serialize};

use super::{pre, SamplingError};
use crate::matroid::{find_circuit, in_span_of_independent, Element, ElementSet, Matroid, MatroidError};
use crate::online::RandomnessTape;

/// Order in which the unread part of a circuit is scanned.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanOrder {
    #[default]
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `T ∪ N' ∪ e` was dependent in some other matroid.
    Rejected { e: Element },
    /// Circuit scan: tape reads in scan order (the scan stops at the first
    /// zero, which sends `e` to `N'`).
    Scanned {
        e: Element,
        reads: Vec<(Element, bool)>,
        added: bool,
        /// `e` was not spanned by `S' ∪ N' ∪ T'`, so there was no circuit.
        empty_circuit: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampOutput {
    /// `N'` in the order elements were added.
    pub n: Vec<Element>,
    pub s_prime: ElementSet,
    pub t_prime: ElementSet,
    pub trace: Vec<TraceStep>,
}

fn circuit_or_empty<M: Matroid + ?Sized>(
    m: &M,
    base: &ElementSet,
    e: Element,
) -> Result<Option<ElementSet>, MatroidError> {
    match find_circuit(m, base, e) {
        Ok(c) => Ok(Some(c)),
        Err(MatroidError::NoCircuit(_)) => Ok(None),
        Err(err) => Err(err),
    }
}

/// Deferred-decision run of contracted greedy with `primary` sampled and
/// every matroid in `others` contracted by `T`.
pub fn samp_alg_k<M: Matroid + ?Sized>(
    primary: &M,
    others: &[&M],
    t: &ElementSet,
    tape: &RandomnessTape,
    order: &[Element],
    scan: ScanOrder,
) -> Result<SampOutput, SamplingError> {
    if !primary.is_independent(t.as_slice())? {
        return Err(pre("T is dependent in the sampled matroid"));
    }
    for m in others {
        if !m.is_independent(t.as_slice())? {
            return Err(pre("T is dependent in a contracted matroid"));
        }
    }
    for &e in order {
        if t.contains(e) {
            return Err(pre(format!("arriving element {e} belongs to T")));
        }
        if !in_span_of_independent(primary, t, e)? {
            return Err(pre(format!("element {e} is not spanned by T")));
        }
    }
    let mut s_prime = ElementSet::new();
    let mut t_prime = t.clone();
    let mut n: Vec<Element> = Vec::new();
    let mut n_set = ElementSet::new();
    let mut trace = Vec::with_capacity(order.len());
    // T ∪ N' in each other matroid
    let mut gates: Vec<_> = others
        .iter()
        .map(|m| {
            let mut st = m.incremental();
            for x in t {
                st.push(x);
            }
            st
        })
        .collect();
    for &e in order {
        if !gates.iter_mut().all(|g| g.can_add(e)) {
            trace.push(TraceStep::Rejected { e });
            continue;
        }
        let current = s_prime.union(&n_set).union(&t_prime);
        let circuit = circuit_or_empty(primary, &current, e)?;
        let mut unread: Vec<Element> = circuit
            .as_ref()
            .map(|c| c.iter().filter(|&x| t_prime.contains(x)).collect())
            .unwrap_or_default();
        unread.sort_unstable();
        if scan == ScanOrder::Descending {
            unread.reverse();
        }
        let mut reads = Vec::new();
        let mut added = false;
        for f in unread {
            t_prime.remove(f);
            let bit = tape.bit(f);
            reads.push((f, bit));
            if bit {
                s_prime.insert(f);
            } else {
                n.push(e);
                n_set.insert(e);
                gates.iter_mut().for_each(|g| g.push(e));
                added = true;
                break;
            }
        }
        trace.push(TraceStep::Scanned {
            e,
            reads,
            added,
            empty_circuit: circuit.is_none(),
        });
    }
    Ok(SampOutput {
        n,
        s_prime,
        t_prime,
        trace,
    })
}

/// Two-matroid form with `m1` sampled and `m2` contracted by `T`.
pub fn samp_alg<M: Matroid + ?Sized>(
    m1: &M,
    m2: &M,
    t: &ElementSet,
    tape: &RandomnessTape,
    order: &[Element],
    scan: ScanOrder,
) -> Result<SampOutput, SamplingError> {
    samp_alg_k(m1, &[m2], t, tape, order, scan)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub steps: usize,
    pub removals: usize,
    pub final_i_prime: usize,
    pub n_size: usize,
    /// Largest `removals - reads` seen in a step that added to `N'`;
    /// bounded by the number of matroids.
    pub max_excess: usize,
}

fn independent<M: Matroid + ?Sized>(m: &M, parts: &[&ElementSet]) -> Result<bool, MatroidError> {
    let all: Vec<Element> = parts.iter().flat_map(|s| s.iter()).collect();
    m.is_independent(&all)
}

/// Removes one element of `i_prime` from the circuit that `x` closes in
/// `base ∪ i_prime`, if there is one. Returns whether a removal happened.
fn break_circuit<M: Matroid + ?Sized>(
    m: &M,
    base: &ElementSet,
    i_prime: &mut ElementSet,
    x: Element,
    step: usize,
) -> Result<bool, SamplingError> {
    let with = base.union(i_prime);
    if with.contains(x) {
        return Err(SamplingError::Invariant {
            step,
            what: format!("element {x} already present"),
        });
    }
    let Some(c) = circuit_or_empty(m, &with, x)? else {
        return Ok(false);
    };
    let victim = c.iter().filter(|&y| i_prime.contains(y)).min().ok_or_else(|| SamplingError::Invariant {
        step,
        what: format!("circuit through {x} has no removable element"),
    })?;
    i_prime.remove(victim);
    Ok(true)
}

/// Replays a trace while maintaining the analysis set `I'` (starting at
/// `i_tilde`) and checks after every step that `S' ∪ N' ∪ I'` is
/// independent in `primary`, `T ∪ N' ∪ I'` in every other matroid, and
/// `I'` only holds elements still to arrive; also that `S ⊆ S' ∪ T' ⊆ T`,
/// `S' ∪ N' ∪ T'` is independent with size `|T|`, no circuit is empty, and
/// each step removes at most `reads + others + 1` elements from `I'` when
/// it adds to `N'` and at most `reads` otherwise.
pub fn track_invariant_sets<M: Matroid + ?Sized>(
    primary: &M,
    others: &[&M],
    t: &ElementSet,
    tape: &RandomnessTape,
    order: &[Element],
    i_tilde: &ElementSet,
    trace: &[TraceStep],
) -> Result<InvariantReport, SamplingError> {
    let fail = |step: usize, what: &str| SamplingError::Invariant {
        step,
        what: what.to_string(),
    };
    let s_full: ElementSet = t.iter().filter(|&x| tape.bit(x)).collect();
    let mut s_prime = ElementSet::new();
    let mut t_prime = t.clone();
    let mut n = ElementSet::new();
    let mut i_prime = i_tilde.clone();
    let mut report = InvariantReport::default();

    if trace.len() != order.len() {
        return Err(pre("trace does not match the arrival order"));
    }
    for (step, (ev, &arriving)) in trace.iter().zip(order).enumerate() {
        let mut removed = 0;
        match ev {
            TraceStep::Rejected { e } => {
                if *e != arriving {
                    return Err(fail(step, "trace element out of order"));
                }
            }
            TraceStep::Scanned {
                e,
                reads,
                added,
                empty_circuit,
            } => {
                if *e != arriving {
                    return Err(fail(step, "trace element out of order"));
                }
                if *empty_circuit {
                    return Err(fail(step, "empty circuit"));
                }
                for &(f, bit) in reads {
                    t_prime.remove(f);
                    if bit {
                        let base = s_prime.union(&n);
                        if break_circuit(primary, &base, &mut i_prime, f, step)? {
                            removed += 1;
                        }
                        s_prime.insert(f);
                    }
                }
                if *added {
                    if i_prime.remove(*e) {
                        removed += 1;
                    } else {
                        let base = s_prime.union(&n);
                        if break_circuit(primary, &base, &mut i_prime, *e, step)? {
                            removed += 1;
                        }
                        let base = t.union(&n);
                        for m in others {
                            if break_circuit(*m, &base, &mut i_prime, *e, step)? {
                                removed += 1;
                            }
                        }
                    }
                    n.insert(*e);
                    let ones = reads.len() - 1;
                    if removed > ones + others.len() + 1 {
                        return Err(fail(step, &format!("{removed} removals after {ones} kept reads")));
                    }
                    report.max_excess = report.max_excess.max(removed.saturating_sub(ones));
                } else if removed > reads.len() {
                    return Err(fail(step, &format!("{removed} removals for a circuit of {}", reads.len())));
                }
            }
        }
        report.removals += removed;

        // I' ⊆ remaining arrivals
        let remaining: ElementSet = order[step + 1..].iter().copied().collect();
        if !i_prime.is_subset(&remaining) {
            return Err(fail(step, "I' holds an element that has already arrived"));
        }
        if !independent(primary, &[&s_prime, &n, &i_prime])? {
            return Err(fail(step, "S' ∪ N' ∪ I' dependent in the sampled matroid"));
        }
        for m in others {
            if !independent(*m, &[t, &n, &i_prime])? {
                return Err(fail(step, "T ∪ N' ∪ I' dependent in a contracted matroid"));
            }
        }
        let st = s_prime.union(&t_prime);
        if !s_full.is_subset(&st) || !st.is_subset(t) {
            return Err(fail(step, "S ⊆ S' ∪ T' ⊆ T violated"));
        }
        if !independent(primary, &[&s_prime, &n, &t_prime])? {
            return Err(fail(step, "S' ∪ N' ∪ T' dependent"));
        }
        if s_prime.len() + n.len() + t_prime.len() != t.len() {
            return Err(fail(step, "|S' ∪ N' ∪ T'| differs from |T|"));
        }
        report.steps += 1;
    }
    report.final_i_prime = i_prime.len();
    report.n_size = n.len();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{contract, PartitionMatroid};
    use crate::online::{greedy, ArrivalStream};
    use crate::sampling::contracted_greedy;

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_indices(ids.iter().copied())
    }

    /// T = {0, 1}; arrivals 2, 3, 4 all spanned by T in M1.
    fn instance() -> (PartitionMatroid, PartitionMatroid) {
        // M1 classes: {0,2,3}, {1,4}; M2 classes: {0}, {1}, {2,3}, {4}
        let m1 = PartitionMatroid::unit(vec![0, 1, 0, 0, 1]);
        let m2 = PartitionMatroid::unit(vec![0, 1, 2, 2, 3]);
        (m1, m2)
    }

    #[test]
    fn all_ones_tape_picks_nothing() {
        let (a, b) = instance();
        let order = [Element(2), Element(3), Element(4)];
        let out = samp_alg(&a, &b, &set(&[0, 1]), &RandomnessTape::all_ones(5), &order, ScanOrder::Ascending).unwrap();
        assert!(out.n.is_empty());
    }

    #[test]
    fn matches_greedy_on_contractions() {
        let (a, b) = instance();
        let t = set(&[0, 1]);
        let order = [Element(3), Element(2), Element(4)];
        for bits in 0..4u32 {
            let tape = RandomnessTape::explicit((0..5).map(|i| i >= 2 || bits & (1 << i) != 0).collect(), 0.5);
            let s: ElementSet = t.iter().filter(|&x| tape.bit(x)).collect();
            let out = samp_alg(&a, &b, &t, &tape, &order, ScanOrder::Ascending).unwrap();
            let fast = contracted_greedy(&a, &[&b], &s, &t, &order);
            let ca = contract(&a, &s).unwrap();
            let cb = contract(&b, &t).unwrap();
            let slow = greedy(&[&ca as &dyn Matroid, &cb], &mut ArrivalStream::from_order(order.to_vec())).unwrap();
            assert_eq!(out.n, fast);
            assert_eq!(out.n, slow.picked);
        }
    }

    #[test]
    fn invariants_hold_on_small_instance() {
        let (a, b) = instance();
        let t = set(&[0, 1]);
        let order = [Element(2), Element(3), Element(4)];
        let i_tilde = set(&[2, 4]);
        for bits in 0..4u32 {
            let tape = RandomnessTape::explicit((0..5).map(|i| i >= 2 || bits & (1 << i) != 0).collect(), 0.5);
            let out = samp_alg(&a, &b, &t, &tape, &order, ScanOrder::Ascending).unwrap();
            let rep = track_invariant_sets(&a, &[&b], &t, &tape, &order, &i_tilde, &out.trace).unwrap();
            assert_eq!(rep.steps, 3);
            assert_eq!(rep.n_size, out.n.len());
        }
    }
}
