use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{since, snapshot, AlgoParams, ArrivalStream, Branch, OnlineError, PhaseState, RandomnessTape, RunResult};
use crate::matroid::{in_span_of_independent, Element, ElementSet, Incremental, Matroid};

fn seeded<'a, M: Matroid + ?Sized>(m: &'a M, base: &ElementSet) -> Box<dyn Incremental + 'a> {
    let mut st = m.incremental();
    for e in base {
        st.push(e);
    }
    st
}

/// Greedy with kept/marked split: returns `(T_f, S)` and appends kept picks.
fn phase_a<M: Matroid + ?Sized>(
    ms: &[&M],
    arrivals: impl Iterator<Item = Element>,
    tape: &RandomnessTape,
    picked: &mut Vec<Element>,
) -> (ElementSet, ElementSet) {
    let mut states: Vec<_> = ms.iter().map(|m| m.incremental()).collect();
    let mut t_f = ElementSet::new();
    let mut s = ElementSet::new();
    for e in arrivals {
        if states.iter_mut().all(|st| st.can_add(e)) {
            states.iter_mut().for_each(|st| st.push(e));
            t_f.insert(e);
            if tape.bit(e) {
                s.insert(e);
                picked.push(e);
            }
        }
    }
    (t_f, s)
}

/// Second phase: element `e` goes to branch `i` when `e` is spanned by
/// `T_f` in matroid `i` and in no other, `S ∪ N_i ∪ e` is independent in
/// matroid `i` and, for every other matroid `j`, `T_f ∪ e` plus the picks of
/// all branches other than `j` is independent in `j`.
///
/// With two matroids the last set is `T_f ∪ N_i ∪ e`. With more, checking
/// each branch alone would let `N_2` and `N_3` collide in matroid 1; sharing
/// the check keeps `S ∪ ⋃ N_i` independent everywhere.
fn phase_b<M: Matroid + ?Sized>(
    ms: &[&M],
    t_f: &ElementSet,
    s: &ElementSet,
    arrivals: impl Iterator<Item = Element>,
    picked: &mut Vec<Element>,
) -> Vec<ElementSet> {
    let k = ms.len();
    let mut span: Vec<_> = ms.iter().map(|m| seeded(*m, t_f)).collect();
    let mut keep: Vec<_> = ms.iter().map(|m| seeded(*m, s)).collect();
    // cross[j] holds T_f plus every pick outside branch j
    let mut cross: Vec<_> = ms.iter().map(|m| seeded(*m, t_f)).collect();
    let mut n = vec![ElementSet::new(); k];
    for e in arrivals {
        if t_f.contains(e) {
            continue;
        }
        let mut owner = None;
        let mut spanned = 0;
        for (j, st) in span.iter_mut().enumerate() {
            if !st.can_add(e) {
                spanned += 1;
                owner = Some(j);
                if spanned > 1 {
                    break;
                }
            }
        }
        let Some(i) = owner.filter(|_| spanned == 1) else {
            continue;
        };
        if keep[i].can_add(e) && cross.iter_mut().enumerate().all(|(j, st)| j == i || st.can_add(e)) {
            keep[i].push(e);
            cross
                .iter_mut()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .for_each(|(_, st)| st.push(e));
            n[i].insert(e);
            picked.push(e);
        }
    }
    n
}

/// Two-phase marking-greedy over `k >= 2` matroids.
///
/// The first `⌊f·m⌋` arrivals run greedy; every greedy pick joins `T_f`, and
/// only those whose tape bit is one are kept (`S`). The remaining arrivals
/// are offered to the branch `i` whose span alone contains them.
pub fn marking_greedy_k<M: Matroid + ?Sized>(
    matroids: &[&M],
    stream: &mut ArrivalStream,
    params: &AlgoParams,
    tape: &RandomnessTape,
) -> Result<RunResult, OnlineError> {
    if matroids.len() < 2 {
        return Err(OnlineError::TooFewMatroids {
            needed: 2,
            got: matroids.len(),
        });
    }
    params.validate()?;
    let before = snapshot(matroids);
    let boundary = params.boundary(stream.len());
    let mut picked = Vec::new();
    let (t_f, s) = phase_a(matroids, stream.by_ref().take(boundary), tape, &mut picked);
    let n = phase_b(matroids, &t_f, &s, stream.by_ref(), &mut picked);
    Ok(RunResult {
        picked,
        phases: Some(PhaseState { t_f, s, n }),
        boundary,
        calls: since(matroids, &before),
        branch: Some(Branch::MarkingGreedy),
    })
}

/// Marking-greedy for the intersection of two matroids.
pub fn marking_greedy_omi<M: Matroid + ?Sized>(
    m1: &M,
    m2: &M,
    stream: &mut ArrivalStream,
    params: &AlgoParams,
    tape: &RandomnessTape,
) -> Result<RunResult, OnlineError> {
    marking_greedy_k(&[m1, m2], stream, params, tape)
}

/// Tosses a coin seeded by `coin_seed`: with probability `params.r` runs
/// marking-greedy, otherwise greedy.
pub fn combined_algorithm<M: Matroid + ?Sized>(
    m1: &M,
    m2: &M,
    stream: &mut ArrivalStream,
    params: &AlgoParams,
    tape: &RandomnessTape,
    coin_seed: u64,
) -> Result<RunResult, OnlineError> {
    params.validate()?;
    let mut coin = ChaCha8Rng::seed_from_u64(coin_seed);
    if coin.gen_bool(params.r) {
        marking_greedy_omi(m1, m2, stream, params, tape)
    } else {
        super::greedy(&[m1, m2], stream)
    }
}

/// Offline single-pass variant: greedy over all of `elements` gives `T`,
/// the tape splits it into kept and marked, and a second pass over
/// `elements` runs the second phase against the full `T`. Returns the
/// larger of `T` and the improved set (`T` on ties); the phase record is
/// kept either way.
pub fn offline_half_plus_delta<M: Matroid + ?Sized>(
    m1: &M,
    m2: &M,
    elements: &[Element],
    params: &AlgoParams,
    tape: &RandomnessTape,
) -> Result<RunResult, OnlineError> {
    params.validate()?;
    let ms = [m1, m2];
    let before = snapshot(&ms);
    let mut picked = Vec::new();
    let (t, s) = phase_a(&ms, elements.iter().copied(), tape, &mut picked);
    let n = phase_b(&ms, &t, &s, elements.iter().copied(), &mut picked);
    let (picked, branch) = if picked.len() > t.len() {
        (picked, Branch::MarkingGreedy)
    } else {
        (t.as_slice().to_vec(), Branch::Greedy)
    };
    Ok(RunResult {
        picked,
        phases: Some(PhaseState { t_f: t, s, n }),
        boundary: elements.len(),
        calls: since(&ms, &before),
        branch: Some(branch),
    })
}

/// `Φ_i = span_i(T_f) ∩ opt` for each matroid, with `T_f` independent.
pub fn phi_sets<M: Matroid + ?Sized>(
    matroids: &[&M],
    t_f: &ElementSet,
    opt: &ElementSet,
) -> Result<Vec<ElementSet>, OnlineError> {
    matroids
        .iter()
        .map(|m| {
            let mut phi = ElementSet::new();
            for o in opt {
                if in_span_of_independent(*m, t_f, o)? {
                    phi.insert(o);
                }
            }
            Ok(phi)
        })
        .collect()
}
