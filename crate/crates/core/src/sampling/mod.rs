//! Deferred-decision view of contracted greedy and exact checks of the
//! sampling bound.
//!
//! Setting: `T` is common independent, every element of `Ẽ` is spanned by
//! `T` in matroid `i`, and `S ⊆ T` keeps each element independently with
//! probability `1 - p`. Greedy over `Ẽ` against `M_i / S` and `M_j / T`
//! (`j ≠ i`) is compared with `p |Ĩ| / (1 + p (k - 1))` for any `Ĩ ⊆ Ẽ`
//! independent in `M_i` and in every `M_j / T`.

mod samp_alg;
mod setting;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instances::{Graph, GraphError};
use crate::matroid::{in_span_of_independent, Element, ElementSet, Matroid, MatroidError};

pub use setting::{build_setting, random_setting, LemmaSetting, OrderCheck, SettingKind, CORPUS_PROBABILITIES};
pub use samp_alg::{
    samp_alg, samp_alg_k, track_invariant_sets, InvariantReport, SampOutput, ScanOrder, TraceStep,
};

/// Largest `|T|` (or sampled side) the exact enumeration accepts.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplingError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{what} has size {size}, above the limit of {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("invariant violated at step {step}: {what}")]
    Invariant { step: usize, what: String },
}

fn pre(msg: impl Into<String>) -> SamplingError {
    SamplingError::Precondition(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactEnumeration,
    MonteCarlo,
}

/// How to take the expectation over the tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Estimate { mean: f64, std_err: f64 },
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Estimate { mean, .. } => *mean,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub lhs: Value,
    pub rhs: BigRational,
    /// Exact comparison for enumeration; `mean + 3 σ ≥ rhs` for Monte-Carlo.
    pub holds: bool,
    pub method: Method,
    pub tapes: u64,
}

/// Parses `a/b` or a decimal such as `0.33` into an exact probability.
pub fn exact_probability(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let q = if let Some((a, b)) = s.split_once('/') {
        let (a, b): (BigInt, BigInt) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        if b.is_zero() {
            return None;
        }
        BigRational::new(a, b)
    } else if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: BigInt = digits.parse().ok()?;
        BigRational::new(num, BigInt::from(10u32).pow(frac.len() as u32))
    } else {
        BigRational::from_integer(s.parse().ok()?)
    };
    (q >= BigRational::zero() && q <= BigRational::one()).then_some(q)
}

/// `p |Ĩ| / (1 + p (k - 1))`.
pub fn sampling_bound(p: &BigRational, i_size: usize, k: usize) -> BigRational {
    let k1 = BigRational::from_integer(BigInt::from(k as u64 - 1));
    p * BigRational::from_integer(BigInt::from(i_size as u64)) / (BigRational::one() + p * k1)
}

/// Greedy over `order` against `primary / s` and `other / t` for every
/// other matroid. Incremental handles are seeded with `s` and `t`.
pub fn contracted_greedy<M: Matroid + ?Sized>(
    primary: &M,
    others: &[&M],
    s: &ElementSet,
    t: &ElementSet,
    order: &[Element],
) -> Vec<Element> {
    let mut a = primary.incremental();
    for e in s {
        a.push(e);
    }
    let mut bs: Vec<_> = others
        .iter()
        .map(|m| {
            let mut st = m.incremental();
            for e in t {
                st.push(e);
            }
            st
        })
        .collect();
    let mut out = Vec::new();
    for &e in order {
        if a.can_add(e) && bs.iter_mut().all(|b| b.can_add(e)) {
            a.push(e);
            bs.iter_mut().for_each(|b| b.push(e));
            out.push(e);
        }
    }
    out
}

fn check_setting<M: Matroid + ?Sized>(
    ms: &[&M],
    i: usize,
    t: &ElementSet,
    order: &[Element],
    i_tilde: &ElementSet,
) -> Result<(), SamplingError> {
    if i >= ms.len() || ms.len() < 2 {
        return Err(pre(format!("branch {i} with {} matroids", ms.len())));
    }
    for m in ms {
        if !m.is_independent(t.as_slice())? {
            return Err(pre("T is not common independent"));
        }
    }
    let tilde_e: ElementSet = order.iter().copied().collect();
    if tilde_e.len() != order.len() {
        return Err(pre("arrival order repeats an element"));
    }
    if !tilde_e.is_disjoint(t) {
        return Err(pre("arrival order meets T"));
    }
    for &e in order {
        if !in_span_of_independent(ms[i], t, e)? {
            return Err(pre(format!("element {e} is not spanned by T")));
        }
    }
    if !i_tilde.is_subset(&tilde_e) {
        return Err(pre("Ĩ is not a subset of the arriving elements"));
    }
    if !ms[i].is_independent(i_tilde.as_slice())? {
        return Err(pre("Ĩ is dependent in the sampled matroid"));
    }
    let with_t = i_tilde.union(t);
    for (j, m) in ms.iter().enumerate() {
        if j != i && !m.is_independent(with_t.as_slice())? {
            return Err(pre(format!("Ĩ is dependent in matroid {j} contracted by T")));
        }
    }
    Ok(())
}

/// Weighted sum `Σ_j w(j) · sums[j]` where `j` counts ones on the tape and
/// a one has probability `one`.
fn weigh(sums: &[u64], one: &BigRational) -> BigRational {
    let n = sums.len() - 1;
    let zero = BigRational::one() - one;
    let mut total = BigRational::zero();
    for (j, &s) in sums.iter().enumerate() {
        if s == 0 {
            continue;
        }
        let w = num::pow(one.clone(), j) * num::pow(zero.clone(), n - j);
        total += w * BigRational::from_integer(BigInt::from(s));
    }
    total
}

fn mc_report(values: &[f64], rhs: BigRational) -> LemmaReport {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let std_err = (var / n).sqrt();
    let holds = mean + 3.0 * std_err >= rhs.to_f64().unwrap_or(f64::INFINITY);
    LemmaReport {
        lhs: Value::Estimate { mean, std_err },
        rhs,
        holds,
        method: Method::MonteCarlo,
        tapes: values.len() as u64,
    }
}

fn size_sums(n: usize, run: impl Fn(u64) -> usize + Sync) -> Vec<u64> {
    (0u64..1 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, mask| {
                acc[mask.count_ones() as usize] += run(mask) as u64;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn others_of<'a, M: Matroid + ?Sized>(matroids: &[&'a M], i: usize) -> Vec<&'a M> {
    matroids
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, m)| *m)
        .collect()
}

/// Total contracted-greedy output size over all `2^|T|` tapes, bucketed by
/// the number of kept elements of `T` (bit `j` of a tape keeps the `j`-th
/// smallest element of `T`). Independent of `p`.
pub fn exact_size_sums<M: Matroid + ?Sized>(
    matroids: &[&M],
    i: usize,
    t: &ElementSet,
    order: &[Element],
) -> Result<Vec<u64>, SamplingError> {
    let members = t.sorted();
    if members.len() > EXACT_LIMIT {
        return Err(SamplingError::SizeGuard {
            what: "T",
            size: members.len(),
            limit: EXACT_LIMIT,
        });
    }
    let others = others_of(matroids, i);
    let primary = matroids[i];
    Ok(size_sums(members.len(), |mask| {
        let s: ElementSet = members
            .iter()
            .enumerate()
            .filter(|&(j, _)| mask & (1 << j) != 0)
            .map(|(_, &e)| e)
            .collect();
        contracted_greedy(primary, &others, &s, t, order).len()
    }))
}

/// `E[size]` from [`exact_size_sums`] when each element of `T` is dropped
/// with probability `p`.
pub fn expectation_from_sums(sums: &[u64], p: &BigRational) -> BigRational {
    weigh(sums, &(BigRational::one() - p))
}

/// Sampling bound for `k` matroids with branch `i` sampled.
pub fn verify_sampling_lemma_k<M: Matroid + ?Sized>(
    matroids: &[&M],
    i: usize,
    t: &ElementSet,
    order: &[Element],
    i_tilde: &ElementSet,
    p: &BigRational,
    how: Expectation,
) -> Result<LemmaReport, SamplingError> {
    check_setting(matroids, i, t, order, i_tilde)?;
    let others = others_of(matroids, i);
    let primary = matroids[i];
    let rhs = sampling_bound(p, i_tilde.len(), matroids.len());
    let members = t.as_slice();
    let run = |keep: &dyn Fn(usize) -> bool| {
        let s: ElementSet = members.iter().enumerate().filter(|&(j, _)| keep(j)).map(|(_, &e)| e).collect();
        contracted_greedy(primary, &others, &s, t, order).len()
    };
    match how {
        Expectation::Exact => {
            let sums = exact_size_sums(matroids, i, t, order)?;
            let lhs = expectation_from_sums(&sums, p);
            Ok(LemmaReport {
                holds: lhs >= rhs,
                lhs: Value::Exact(lhs),
                rhs,
                method: Method::ExactEnumeration,
                tapes: 1 << members.len(),
            })
        }
        Expectation::MonteCarlo { samples, seed } => {
            let pf = p.to_f64().unwrap_or(0.0);
            let values: Vec<f64> = (0..samples)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(k);
                    let bits: Vec<bool> = (0..members.len()).map(|_| rng.gen::<f64>() >= pf).collect();
                    run(&|j| bits[j]) as f64
                })
                .collect();
            Ok(mc_report(&values, rhs))
        }
    }
}

/// Two-matroid sampling bound with matroid 1 sampled (swap the arguments
/// for the other branch).
pub fn verify_sampling_lemma_exact<M: Matroid + ?Sized>(
    m1: &M,
    m2: &M,
    t: &ElementSet,
    order: &[Element],
    i_tilde: &ElementSet,
    p: &BigRational,
) -> Result<LemmaReport, SamplingError> {
    verify_sampling_lemma_k(&[m1, m2], 0, t, order, i_tilde, p, Expectation::Exact)
}

/// Bipartite form: every `U` vertex of `h` touched by `order` is sampled
/// independently with probability `p`, and greedy matching runs over the
/// edges of `order` whose `U` endpoint was sampled.
pub fn verify_sampling_lemma_bipartite(
    h: &Graph,
    i_tilde: &[Element],
    p: &BigRational,
    order: &[Element],
    how: Expectation,
) -> Result<LemmaReport, SamplingError> {
    let left = h.left_count().ok_or(GraphError::NoBipartition)?;
    if !h.is_matching(i_tilde) {
        return Err(pre("Ĩ is not a matching"));
    }
    let in_order: ElementSet = order.iter().copied().collect();
    if i_tilde.iter().any(|&e| !in_order.contains(e)) {
        return Err(pre("Ĩ is not a subset of the arriving edges"));
    }
    let mut slot = vec![usize::MAX; left];
    let mut xs = 0;
    for &e in order {
        let (u, _) = h.edge(e);
        if slot[u] == usize::MAX {
            slot[u] = xs;
            xs += 1;
        }
    }
    let rhs = sampling_bound(p, i_tilde.len(), 2);
    let run = |sampled: &dyn Fn(usize) -> bool| {
        let mut used = vec![false; h.vertex_count()];
        let mut size = 0;
        for &e in order {
            let (u, v) = h.edge(e);
            if sampled(slot[u]) && !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                size += 1;
            }
        }
        size
    };
    match how {
        Expectation::Exact => {
            if xs > EXACT_LIMIT {
                return Err(SamplingError::SizeGuard {
                    what: "sampled side",
                    size: xs,
                    limit: EXACT_LIMIT,
                });
            }
            let sums = size_sums(xs, |mask| run(&|j| mask & (1 << j) != 0));
            let lhs = weigh(&sums, p);
            Ok(LemmaReport {
                holds: lhs >= rhs,
                lhs: Value::Exact(lhs),
                rhs,
                method: Method::ExactEnumeration,
                tapes: 1 << xs,
            })
        }
        Expectation::MonteCarlo { samples, seed } => {
            let pf = p.to_f64().unwrap_or(0.0);
            let values: Vec<f64> = (0..samples)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(k);
                    let bits: Vec<bool> = (0..xs).map(|_| rng.gen::<f64>() < pf).collect();
                    run(&|j| bits[j]) as f64
                })
                .collect();
            Ok(mc_report(&values, rhs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::PartitionMatroid;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn set(ids: &[usize]) -> ElementSet {
        ElementSet::from_indices(ids.iter().copied())
    }

    /// `t = 0`, `e = 1`: same class in M1, different classes in M2.
    fn gadget() -> (PartitionMatroid, PartitionMatroid) {
        (PartitionMatroid::unit(vec![0, 0]), PartitionMatroid::unit(vec![0, 1]))
    }

    #[test]
    fn probabilities_parse_exactly() {
        assert_eq!(exact_probability("0.33"), Some(q(33, 100)));
        assert_eq!(exact_probability("9/10"), Some(q(9, 10)));
        assert_eq!(exact_probability("1"), Some(q(1, 1)));
        assert_eq!(exact_probability("1.5"), None);
        assert_eq!(exact_probability("x"), None);
    }

    #[test]
    fn base_gadget_gives_p() {
        let (a, b) = gadget();
        for p in [q(1, 10), q(33, 100), q(9, 10)] {
            let r = verify_sampling_lemma_exact(&a, &b, &set(&[0]), &[Element(1)], &set(&[1]), &p).unwrap();
            assert_eq!(r.lhs, Value::Exact(p.clone()));
            assert!(r.holds);
            assert_eq!(r.rhs, p.clone() / (q(1, 1) + p));
        }
    }

    #[test]
    fn empty_tilde_i_is_trivial() {
        let (a, b) = gadget();
        let r = verify_sampling_lemma_exact(&a, &b, &set(&[0]), &[Element(1)], &set(&[]), &q(1, 2)).unwrap();
        assert_eq!(r.rhs, q(0, 1));
        assert!(r.holds);
    }

    #[test]
    fn k_bound_at_two_matches() {
        let p = q(36, 100);
        assert_eq!(sampling_bound(&p, 5, 2), q(5, 1) * p.clone() / (q(1, 1) + p));
    }

    #[test]
    fn bipartite_base_case() {
        let h = Graph::bipartite(1, 1, vec![(0, 1)]).unwrap();
        let r = verify_sampling_lemma_bipartite(&h, &[Element(0)], &q(36, 100), &[Element(0)], Expectation::Exact).unwrap();
        assert_eq!(r.lhs, Value::Exact(q(36, 100)));
        let mc = verify_sampling_lemma_bipartite(&h, &[Element(0)], &q(36, 100), &[Element(0)], Expectation::MonteCarlo { samples: 4000, seed: 1 }).unwrap();
        assert!((mc.lhs.as_f64() - 0.36).abs() < 0.03);
        assert!(mc.holds);
    }

    #[test]
    fn preconditions_are_checked() {
        let (a, b) = gadget();
        // element 1 is not spanned by the empty set
        assert!(verify_sampling_lemma_exact(&a, &b, &set(&[]), &[Element(1)], &set(&[]), &q(1, 2)).is_err());
        // order meets T
        assert!(verify_sampling_lemma_exact(&a, &b, &set(&[0]), &[Element(0)], &set(&[]), &q(1, 2)).is_err());
    }
}
