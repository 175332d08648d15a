use serde::Serialize;

use super::{derive_seed, mean_and_se, par_trials, HarnessError};
use crate::exact::{exact_intersection, max_bipartite_matching};
use crate::instances::{ground, Instance};
use crate::matroid::{Element, ElementSet};
use crate::online::{phi_sets, ArrivalStream};

/// Normalised greedy prefix size `|T_f| / |OPT|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GfPoint {
    pub f: f64,
    pub mean: f64,
    pub std_err: f64,
}

/// Span-overlap statistics at one prefix fraction, normalised by `|OPT|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiPoint {
    pub intersection: f64,
    pub intersection_se: f64,
    /// Upper bound `2ε`.
    pub intersection_bound: f64,
    pub union: f64,
    pub union_se: f64,
    /// Lower bound `1 - 2ε/f + 2ε`.
    pub union_bound: f64,
}

impl PhiPoint {
    pub fn holds(&self) -> bool {
        self.intersection - 3.0 * self.intersection_se <= self.intersection_bound
            && self.union + 3.0 * self.union_se >= self.union_bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HastinessRow {
    pub f: f64,
    pub g: f64,
    pub std_err: f64,
    /// `1/2 - (1/f - 2) ε`.
    pub bound: f64,
    pub holds: bool,
    #[serde(skip)]
    pub phi: Option<PhiPoint>,
}

/// Greedy prefix at each checkpoint plus, when `opt` is given, the Φ-set
/// sizes there.
struct PrefixTrial {
    sizes: Vec<usize>,
    phi: Vec<(usize, usize)>,
}

fn prefix_trial(
    instance: &Instance,
    seed: u64,
    cuts: &[usize],
    opt: Option<&ElementSet>,
) -> Result<PrefixTrial, HarnessError> {
    let order = ArrivalStream::random(instance.ground_size, seed).order().to_vec();
    let mut sizes = Vec::with_capacity(cuts.len());
    let mut phi = Vec::new();
    let mut t: Vec<Element> = Vec::new();
    let ms = instance.matroid_refs();
    let mut record = |t: &[Element], sizes: &mut Vec<usize>| -> Result<(), HarnessError> {
        sizes.push(t.len());
        if let (Some(opt), false) = (opt, ms.is_empty()) {
            let t_set: ElementSet = t.iter().copied().collect();
            let sets = phi_sets(&ms, &t_set, opt)?;
            let inter = sets[0].intersection(&sets[1]).len();
            let union = sets[0].union(&sets[1]).len();
            phi.push((inter, union));
        }
        Ok(())
    };
    let mut pos = 0;
    let mut cut = cuts.iter().peekable();
    if ms.is_empty() {
        let g = instance.graph.as_ref().expect("graph-only instance");
        let mut used = vec![false; g.vertex_count()];
        for &e in &order {
            while cut.next_if(|&&c| c == pos).is_some() {
                record(&t, &mut sizes)?;
            }
            let (u, v) = g.edge(e);
            if u != v && !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                t.push(e);
            }
            pos += 1;
        }
    } else {
        let mut states: Vec<_> = ms.iter().map(|m| m.incremental()).collect();
        for &e in &order {
            while cut.next_if(|&&c| c == pos).is_some() {
                record(&t, &mut sizes)?;
            }
            if states.iter_mut().all(|s| s.can_add(e)) {
                states.iter_mut().for_each(|s| s.push(e));
                t.push(e);
            }
            pos += 1;
        }
    }
    while cut.next().is_some() {
        record(&t, &mut sizes)?;
    }
    Ok(PrefixTrial { sizes, phi })
}

fn opt_set(instance: &Instance) -> Result<ElementSet, HarnessError> {
    if let Some(o) = &instance.known_opt {
        return Ok(o.clone());
    }
    if let Some(g) = &instance.graph {
        return Ok(max_bipartite_matching(g)?.opt_set);
    }
    let ms = instance.matroid_refs();
    let [a, b] = ms.as_slice() else {
        return Err(HarnessError::Unsupported {
            algorithm: "prefix curve",
            family: instance.spec.family.name(),
            why: "needs two matroids or a bipartite graph",
        });
    };
    Ok(exact_intersection(*a, *b, &ground(instance))?.opt_set)
}

fn cuts_for(instance: &Instance, f_grid: &[f64]) -> Result<Vec<usize>, HarnessError> {
    let m = instance.ground_size;
    let mut cuts = Vec::with_capacity(f_grid.len());
    for &f in f_grid {
        if !(f > 0.0 && f <= 1.0) {
            return Err(HarnessError::Config(format!("prefix fraction {f} outside (0, 1]")));
        }
        cuts.push(((f * m as f64).floor() as usize).min(m));
    }
    Ok(cuts)
}

fn run_prefix(
    instance: &Instance,
    trials: u64,
    base_seed: u64,
    f_grid: &[f64],
    with_phi: bool,
) -> Result<(Vec<PrefixTrial>, usize), HarnessError> {
    let opt = opt_set(instance)?;
    let cuts = cuts_for(instance, f_grid)?;
    // checkpoints are visited in stream order
    let mut sorted: Vec<usize> = (0..cuts.len()).collect();
    sorted.sort_by_key(|&i| cuts[i]);
    let sorted_cuts: Vec<usize> = sorted.iter().map(|&i| cuts[i]).collect();
    let opt_for_phi = with_phi.then_some(&opt);
    let raw = par_trials(instance, trials, None, |inst, t| {
        prefix_trial(inst, derive_seed(base_seed, t), &sorted_cuts, opt_for_phi)
    })?;
    // undo the sort so results follow f_grid
    let runs = raw
        .into_iter()
        .map(|r| {
            let mut sizes = vec![0; cuts.len()];
            let mut phi = vec![(0, 0); if r.phi.is_empty() { 0 } else { cuts.len() }];
            for (k, &i) in sorted.iter().enumerate() {
                sizes[i] = r.sizes[k];
                if !r.phi.is_empty() {
                    phi[i] = r.phi[k];
                }
            }
            PrefixTrial { sizes, phi }
        })
        .collect();
    Ok((runs, opt.len()))
}

/// Estimates `G(f)` at each fraction of `f_grid` from one greedy pass per
/// trial over a seeded random order.
pub fn estimate_gf_curve(
    instance: &Instance,
    trials: u64,
    base_seed: u64,
    f_grid: &[f64],
) -> Result<Vec<GfPoint>, HarnessError> {
    let (runs, opt) = run_prefix(instance, trials, base_seed, f_grid, false)?;
    let norm = opt.max(1) as f64;
    Ok(f_grid
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let xs: Vec<f64> = runs.iter().map(|r| r.sizes[i] as f64 / norm).collect();
            let (mean, std_err) = mean_and_se(&xs);
            GfPoint { f, mean, std_err }
        })
        .collect())
}

/// Prefix-curve check of the hastiness bound.
///
/// `ε` is the measured `G(1) - 1/2` plus three standard errors (so the
/// premise holds by construction up to noise). Each row compares `G(f)`
/// against `1/2 - (1/f - 2) ε` with 3σ slack; for matroid instances the
/// rows also carry the Φ-set statistics.
pub fn hastiness_report(
    instance: &Instance,
    trials: u64,
    base_seed: u64,
    f_grid: &[f64],
) -> Result<(f64, Vec<HastinessRow>), HarnessError> {
    let mut grid = f_grid.to_vec();
    grid.push(1.0);
    let with_phi = !instance.matroids.is_empty();
    let (runs, opt) = run_prefix(instance, trials, base_seed, &grid, with_phi)?;
    let norm = opt.max(1) as f64;
    let column = |pick: &dyn Fn(&PrefixTrial) -> f64| {
        let xs: Vec<f64> = runs.iter().map(|r| pick(r) / norm).collect();
        mean_and_se(&xs)
    };
    let last = grid.len() - 1;
    let (g1, se1) = column(&|r| r.sizes[last] as f64);
    let eps = (g1 - 0.5 + 3.0 * se1).max(0.0);
    let rows = f_grid
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let (g, se) = column(&|r| r.sizes[i] as f64);
            let bound = 0.5 - (1.0 / f - 2.0) * eps;
            let phi = with_phi.then(|| {
                let (inter, inter_se) = column(&|r| r.phi[i].0 as f64);
                let (union, union_se) = column(&|r| r.phi[i].1 as f64);
                PhiPoint {
                    intersection: inter,
                    intersection_se: inter_se,
                    intersection_bound: 2.0 * eps,
                    union,
                    union_se,
                    union_bound: 1.0 - 2.0 * eps / f + 2.0 * eps,
                }
            });
            HastinessRow {
                f,
                g,
                std_err: se,
                bound,
                holds: g + 3.0 * se >= bound,
                phi,
            }
        })
        .collect();
    Ok((eps, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{generate, Family, InstanceSpec};

    #[test]
    fn curve_is_monotone_and_ends_at_greedy() {
        let inst = generate(&InstanceSpec::new(Family::BalancedThickZ { n: 8 }, 0)).unwrap();
        let curve = estimate_gf_curve(&inst, 50, 3, &[0.1, 0.5, 1.0]).unwrap();
        assert!(curve.windows(2).all(|w| w[0].mean <= w[1].mean));
        assert!(curve[2].mean >= 0.5);
    }

    #[test]
    fn grid_order_does_not_matter() {
        let inst = generate(&InstanceSpec::new(Family::BalancedThickZ { n: 6 }, 0)).unwrap();
        let a = estimate_gf_curve(&inst, 20, 1, &[0.2, 0.8]).unwrap();
        let b = estimate_gf_curve(&inst, 20, 1, &[0.8, 0.2]).unwrap();
        assert_eq!(a[0], b[1]);
        assert_eq!(a[1], b[0]);
    }

    #[test]
    fn bomb_curve_uses_the_graph() {
        let inst = generate(&InstanceSpec::new(Family::Bomb { n: 10 }, 0)).unwrap();
        let curve = estimate_gf_curve(&inst, 20, 1, &[1.0]).unwrap();
        assert!(curve[0].mean >= 0.5);
    }

    #[test]
    fn hastiness_holds_on_thick_z() {
        let inst = generate(&InstanceSpec::new(Family::BalancedThickZ { n: 20 }, 0)).unwrap();
        let (eps, rows) = hastiness_report(&inst, 200, 9, &[0.1, 0.25]).unwrap();
        assert!(eps >= 0.0);
        for r in rows {
            assert!(r.holds, "{r:?}");
            assert!(r.phi.unwrap().holds(), "{r:?}");
        }
        assert!(cuts_for(&inst, &[0.0]).is_err());
    }
}
