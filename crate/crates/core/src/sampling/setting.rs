use num::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{
    check_setting, exact_size_sums, expectation_from_sums, pre, samp_alg_k, sampling_bound, track_invariant_sets,
    LemmaReport, Method, SamplingError, ScanOrder, Value,
};
use crate::matroid::format::MatroidFile;
use crate::matroid::{AnyMatroid, Element, ElementSet, GraphicMatroid, Matroid, PartitionMatroid};
use crate::online::RandomnessTape;

/// Default probabilities attached to generated settings.
pub const CORPUS_PROBABILITIES: [&str; 5] = ["1/10", "33/100", "36/100", "1/2", "9/10"];

/// A stored instance of the sampling bound: matroids, the common
/// independent `T`, the hidden set `Ĩ`, several arrival orders over the
/// same `Ẽ`, and the probabilities to check.
#[derive(Clone, Debug)]
pub struct LemmaSetting {
    pub matroids: Vec<AnyMatroid>,
    /// Index of the matroid contracted by the sample `S`.
    pub branch: usize,
    pub t: ElementSet,
    pub i_tilde: ElementSet,
    pub orders: Vec<(String, Vec<Element>)>,
    pub probabilities: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub struct OrderCheck {
    pub order: String,
    pub p: BigRational,
    pub report: LemmaReport,
}

impl LemmaSetting {
    pub fn refs(&self) -> Vec<&dyn Matroid> {
        self.matroids.iter().map(|m| m as &dyn Matroid).collect()
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        let first = self.orders.first().ok_or_else(|| pre("setting has no arrival order"))?;
        let tilde_e: ElementSet = first.1.iter().copied().collect();
        for (name, order) in &self.orders {
            let set: ElementSet = order.iter().copied().collect();
            if set != tilde_e {
                return Err(pre(format!("order `{name}` covers a different element set")));
            }
        }
        check_setting(&self.refs(), self.branch, &self.t, &first.1, &self.i_tilde)
    }

    /// Exact expectation for every order and probability.
    pub fn verify_exact(&self) -> Result<Vec<OrderCheck>, SamplingError> {
        self.validate()?;
        let ms = self.refs();
        let mut out = Vec::new();
        for (name, order) in &self.orders {
            let sums = exact_size_sums(&ms, self.branch, &self.t, order)?;
            for p in &self.probabilities {
                let lhs = expectation_from_sums(&sums, p);
                let rhs = sampling_bound(p, self.i_tilde.len(), ms.len());
                out.push(OrderCheck {
                    order: name.clone(),
                    p: p.clone(),
                    report: LemmaReport {
                        holds: lhs >= rhs,
                        lhs: Value::Exact(lhs),
                        rhs,
                        method: Method::ExactEnumeration,
                        tapes: 1 << self.t.len(),
                    },
                });
            }
        }
        Ok(out)
    }

    /// Replays the deferred-decision run for `tapes` tapes per order (every
    /// tape when `2^|T| ≤ tapes`, otherwise evenly spaced masks) in both
    /// scan orders and checks the proof invariants.
    pub fn check_invariants(&self, tapes: u64) -> Result<usize, SamplingError> {
        self.validate()?;
        let ms = self.refs();
        let primary = ms[self.branch];
        let others: Vec<&dyn Matroid> = ms.iter().enumerate().filter(|&(j, _)| j != self.branch).map(|(_, m)| *m).collect();
        let members = self.t.sorted();
        let total = 1u64 << members.len();
        let step = (total / tapes.max(1)).max(1);
        let ground = self.matroids[0].ground_size();
        let mut replays = 0;
        for (_, order) in &self.orders {
            let mut mask = 0;
            while mask < total {
                let mut bits = vec![true; ground];
                for (j, e) in members.iter().enumerate() {
                    bits[e.index()] = mask & (1 << j) != 0;
                }
                let tape = RandomnessTape::explicit(bits, 0.5);
                for scan in [ScanOrder::Ascending, ScanOrder::Descending] {
                    let out = samp_alg_k(primary, &others, &self.t, &tape, order, scan)?;
                    track_invariant_sets(primary, &others, &self.t, &tape, order, &self.i_tilde, &out.trace)?;
                    replays += 1;
                }
                mask += step;
            }
        }
        Ok(replays)
    }

    pub fn to_file(&self) -> MatroidFile {
        let mut file = MatroidFile {
            matroids: self.matroids.clone(),
            orders: self.orders.clone(),
            ..Default::default()
        };
        file.sets.insert("T".into(), self.t.sorted());
        file.sets.insert("I".into(), self.i_tilde.sorted());
        file.attributes.insert("branch".into(), vec![self.branch.to_string()]);
        file.attributes
            .insert("p".into(), self.probabilities.iter().map(|p| p.to_string()).collect());
        file
    }

    pub fn from_file(file: &MatroidFile) -> Result<Self, SamplingError> {
        let set = |name: &str| -> Result<ElementSet, SamplingError> {
            file.sets
                .get(name)
                .map(|ids| ids.iter().copied().collect())
                .ok_or_else(|| pre(format!("missing `set {name}` line")))
        };
        let branch = match file.attributes.get("branch").and_then(|v| v.first()) {
            Some(b) => b.parse().map_err(|_| pre(format!("bad branch `{b}`")))?,
            None => 0,
        };
        let probabilities = file
            .attributes
            .get("p")
            .ok_or_else(|| pre("missing `p` line"))?
            .iter()
            .map(|s| super::exact_probability(s).ok_or_else(|| pre(format!("bad probability `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LemmaSetting {
            matroids: file.matroids.clone(),
            branch,
            t: set("T")?,
            i_tilde: set("I")?,
            orders: file.orders.clone(),
            probabilities,
        })
    }
}

/// Shape of the matroids in a generated setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SettingKind {
    Partition,
    Graphic,
    Mixed,
}

fn random_partition<R: Rng>(rng: &mut R, m: usize) -> AnyMatroid {
    let classes = rng.gen_range(m / 4 + 1..=m / 2 + 1);
    let class_of: Vec<usize> = (0..m).map(|_| rng.gen_range(0..classes)).collect();
    let caps: Vec<usize> = (0..classes).map(|_| if rng.gen_bool(0.8) { 1 } else { 2 }).collect();
    PartitionMatroid::new(class_of, caps).expect("valid partition").into()
}

fn random_graphic<R: Rng>(rng: &mut R, m: usize) -> AnyMatroid {
    let vertices = rng.gen_range(m / 3 + 2..=m / 2 + 3);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            let mut v = rng.gen_range(0..vertices - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    GraphicMatroid::new(vertices, edges).expect("valid graph").into()
}

/// Draws `k` matroids over `m` elements until it finds a setting with a
/// non-empty `Ĩ` and `|T| ≤ max_t`. `T` is greedy over a random order,
/// `Ẽ` is every element spanned by `T` in the sampled matroid, and `Ĩ` is
/// greedy over a random order of `Ẽ`. Orders: ascending, descending,
/// `Ĩ` last, `Ĩ` first, and one uniformly random.
pub fn random_setting<R: Rng>(rng: &mut R, kind: SettingKind, k: usize, m: usize, max_t: usize) -> LemmaSetting {
    loop {
        let make = |rng: &mut R| match kind {
            SettingKind::Partition => random_partition(rng, m),
            SettingKind::Graphic => random_graphic(rng, m),
            SettingKind::Mixed => {
                if rng.gen_bool(0.5) {
                    random_partition(rng, m)
                } else {
                    random_graphic(rng, m)
                }
            }
        };
        let matroids: Vec<AnyMatroid> = (0..k).map(|_| make(rng)).collect();
        let branch = rng.gen_range(0..k);
        if let Some(setting) = build_setting(rng, matroids, branch, max_t) {
            return setting;
        }
    }
}

/// Builds `T`, `Ẽ`, `Ĩ` and the order menu for given matroids, or `None`
/// when `Ĩ` comes out empty.
pub fn build_setting<R: Rng>(rng: &mut R, matroids: Vec<AnyMatroid>, branch: usize, max_t: usize) -> Option<LemmaSetting> {
    let m = matroids[0].ground_size();
    let ms: Vec<&dyn Matroid> = matroids.iter().map(|x| x as &dyn Matroid).collect();
    let mut perm: Vec<Element> = (0..m).map(Element).collect();
    perm.shuffle(rng);
    let mut t: Vec<Element> = Vec::new();
    for &e in &perm {
        if t.len() == max_t {
            break;
        }
        let mut with = t.clone();
        with.push(e);
        if ms.iter().all(|x| x.is_independent(&with).unwrap_or(false)) {
            t = with;
        }
    }
    let t_set: ElementSet = t.iter().copied().collect();
    let mut tilde_e: Vec<Element> = (0..m)
        .map(Element)
        .filter(|&e| !t_set.contains(e) && crate::matroid::in_span_of_independent(ms[branch], &t_set, e).unwrap_or(false))
        .collect();
    tilde_e.shuffle(rng);
    let mut i_tilde: Vec<Element> = Vec::new();
    for &e in &tilde_e {
        let mut with = i_tilde.clone();
        with.push(e);
        let mut with_t = with.clone();
        with_t.extend(&t);
        let ok = ms[branch].is_independent(&with).unwrap_or(false)
            && ms
                .iter()
                .enumerate()
                .all(|(j, x)| j == branch || x.is_independent(&with_t).unwrap_or(false));
        if ok {
            i_tilde = with;
        }
    }
    if i_tilde.is_empty() {
        return None;
    }
    let i_set: ElementSet = i_tilde.iter().copied().collect();
    let mut asc = tilde_e.clone();
    asc.sort_unstable();
    let desc: Vec<Element> = asc.iter().rev().copied().collect();
    let (hidden, rest): (Vec<Element>, Vec<Element>) = asc.iter().partition(|&&e| i_set.contains(e));
    let last: Vec<Element> = rest.iter().chain(&hidden).copied().collect();
    let first: Vec<Element> = hidden.iter().chain(&rest).copied().collect();
    let orders = vec![
        ("asc".to_string(), asc),
        ("desc".to_string(), desc),
        ("hidden-last".to_string(), last),
        ("hidden-first".to_string(), first),
        ("random".to_string(), tilde_e),
    ];
    Some(LemmaSetting {
        matroids,
        branch,
        t: t_set,
        i_tilde: i_set,
        orders,
        probabilities: CORPUS_PROBABILITIES
            .iter()
            .map(|s| super::exact_probability(s).expect("literal probability"))
            .collect(),
    })
}
