use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::{derive_seed, mean_and_se, par_trials, Algorithm, ExperimentConfig, HarnessError};
use crate::exact::{brute_force_intersection, brute_force_matching, exact_intersection, max_bipartite_matching};
use crate::instances::{generate, ground, Instance};
use crate::matroid::is_common_independent;
use crate::online::{
    combined_algorithm, greedy, greedy_matching, marking_greedy_bipartite, marking_greedy_general, marking_greedy_k,
    offline_half_plus_delta, AlgoParams, ArrivalStream, Branch, RandomnessTape, RunResult,
};

/// First line of every trial CSV.
pub const CSV_VERSION: &str = "# omi-trials v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSeeds {
    pub order: u64,
    pub tape: u64,
    pub coin: u64,
}

impl TrialSeeds {
    pub fn for_trial(base: &super::Seeds, trial: u64) -> Self {
        TrialSeeds {
            order: derive_seed(base.order, trial),
            tape: derive_seed(base.tape, trial),
            coin: derive_seed(base.coin, trial),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub order_seed: u64,
    pub tape_seed: u64,
    pub coin_seed: u64,
    pub algorithm: &'static str,
    pub picked: usize,
    pub opt: usize,
    pub ratio: f64,
    /// Oracle calls per matroid, `;`-separated.
    pub calls: String,
    pub total_calls: u64,
    pub t_f: usize,
    pub s: usize,
    /// Second-phase picks per branch, `;`-separated.
    pub n: String,
    pub branch: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_us: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub trials: u64,
    pub opt: usize,
    pub mean_ratio: f64,
    pub std_ratio: f64,
    pub std_err: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub mean_picked: f64,
    pub mean_calls: f64,
    /// Mean oracle calls divided by the ground-set size.
    pub calls_per_element: f64,
    pub marking_branch: u64,
}

impl Aggregate {
    pub fn from_records(records: &[TrialRecord], ground_size: usize) -> Self {
        let ratios: Vec<f64> = records.iter().map(|r| r.ratio).collect();
        let (mean, se) = mean_and_se(&ratios);
        let n = records.len() as f64;
        let mean_calls = records.iter().map(|r| r.total_calls as f64).sum::<f64>() / n.max(1.0);
        Aggregate {
            trials: records.len() as u64,
            opt: records.first().map_or(0, |r| r.opt),
            mean_ratio: mean,
            std_ratio: se * n.sqrt(),
            std_err: se,
            ci95_low: mean - 1.96 * se,
            ci95_high: mean + 1.96 * se,
            min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
            max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean_picked: records.iter().map(|r| r.picked as f64).sum::<f64>() / n.max(1.0),
            mean_calls,
            calls_per_element: mean_calls / ground_size.max(1) as f64,
            marking_branch: records.iter().filter(|r| r.branch == "marking-greedy").count() as u64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrialSet {
    pub config: ExperimentConfig,
    pub params: AlgoParams,
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

/// Size of a maximum solution: the construction's known optimum when there
/// is one, otherwise Hopcroft–Karp, exchange-graph intersection or brute
/// force depending on the instance.
pub fn instance_opt(instance: &Instance) -> Result<usize, HarnessError> {
    if let Some(opt) = &instance.known_opt {
        return Ok(opt.len());
    }
    if let Some(g) = &instance.graph {
        return Ok(if g.is_bipartite_labelled() {
            max_bipartite_matching(g)?.opt_size
        } else {
            brute_force_matching(g)?.opt_size
        });
    }
    let ms = instance.matroid_refs();
    let els = ground(instance);
    Ok(match ms.as_slice() {
        [a, b] => exact_intersection(*a, *b, &els)?.opt_size,
        _ => brute_force_intersection(&ms, &els)?.opt_size,
    })
}

fn unsupported(algorithm: Algorithm, instance: &Instance, why: &'static str) -> HarnessError {
    HarnessError::Unsupported {
        algorithm: algorithm.name(),
        family: instance.spec.family.name(),
        why,
    }
}

/// One run of `algorithm` on `instance` under the given seeds.
pub fn run_algorithm(
    instance: &Instance,
    algorithm: Algorithm,
    params: &AlgoParams,
    seeds: TrialSeeds,
) -> Result<RunResult, HarnessError> {
    let m = instance.ground_size;
    let mut stream = ArrivalStream::random(m, seeds.order);
    let tape = RandomnessTape::seeded(seeds.tape, params.p);
    if algorithm.on_graph() {
        let g = instance
            .graph
            .as_ref()
            .ok_or_else(|| unsupported(algorithm, instance, "instance has no graph"))?;
        return Ok(match algorithm {
            Algorithm::GreedyMatching => greedy_matching(g, &mut stream)?,
            Algorithm::MarkingGreedyBipartite => marking_greedy_bipartite(g, &mut stream, params, &tape)?,
            _ => marking_greedy_general(g, &mut stream, params, &tape)?,
        });
    }
    let ms = instance.matroid_refs();
    if ms.is_empty() {
        return Err(unsupported(algorithm, instance, "instance has no matroids"));
    }
    Ok(match algorithm {
        Algorithm::Greedy => greedy(&ms, &mut stream)?,
        Algorithm::MarkingGreedy => marking_greedy_k(&ms, &mut stream, params, &tape)?,
        Algorithm::Combined | Algorithm::OfflineHalfPlusDelta => {
            let [a, b] = ms.as_slice() else {
                return Err(unsupported(algorithm, instance, "needs exactly two matroids"));
            };
            if algorithm == Algorithm::Combined {
                combined_algorithm(*a, *b, &mut stream, params, &tape, seeds.coin)?
            } else {
                offline_half_plus_delta(*a, *b, stream.order(), params, &tape)?
            }
        }
        _ => unreachable!("graph algorithms handled above"),
    })
}

fn join<T: ToString>(xs: impl Iterator<Item = T>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn one_trial(
    instance: &Instance,
    config: &ExperimentConfig,
    params: &AlgoParams,
    opt: usize,
    trial: u64,
) -> Result<TrialRecord, HarnessError> {
    let seeds = TrialSeeds::for_trial(&config.seeds, trial);
    let start = config.timing.then(Instant::now);
    let run = run_algorithm(instance, config.algorithm, params, seeds)?;
    let wall_us = start.map(|s| s.elapsed().as_micros());
    let valid = match (&instance.graph, config.algorithm.on_graph()) {
        (Some(g), true) => g.is_matching(&run.picked),
        _ => is_common_independent(&instance.matroid_refs(), &run.picked)?,
    };
    if !valid {
        return Err(HarnessError::Validation {
            trial,
            what: "returned set is not feasible".into(),
        });
    }
    if run.size() > opt {
        return Err(HarnessError::Validation {
            trial,
            what: format!("picked {} exceeds the optimum {opt}", run.size()),
        });
    }
    let phases = run.phases.clone().unwrap_or_default();
    Ok(TrialRecord {
        trial,
        order_seed: seeds.order,
        tape_seed: seeds.tape,
        coin_seed: seeds.coin,
        algorithm: config.algorithm.name(),
        picked: run.size(),
        opt,
        ratio: if opt == 0 { 1.0 } else { run.size() as f64 / opt as f64 },
        calls: join(run.calls.iter()),
        total_calls: run.total_calls(),
        t_f: phases.t_f.len(),
        s: phases.s.len(),
        n: join(phases.n.iter().map(|x| x.len())),
        branch: match run.branch {
            Some(Branch::MarkingGreedy) => "marking-greedy",
            _ => "greedy",
        },
        wall_us,
    })
}

/// Runs every trial of `config` on a freshly generated instance.
pub fn run_trials(config: &ExperimentConfig) -> Result<TrialSet, HarnessError> {
    config.validate()?;
    let instance = generate(&config.instance)?;
    run_trials_on(&instance, config)
}

/// Runs every trial of `config` on `instance`; the config's instance spec
/// is ignored. Records come back in trial order.
pub fn run_trials_on(instance: &Instance, config: &ExperimentConfig) -> Result<TrialSet, HarnessError> {
    config.validate()?;
    let params = config.algo_params(instance.matroids.len());
    params.validate()?;
    let opt = instance_opt(instance)?;
    let records = par_trials(instance, config.trials, config.threads, |inst, t| one_trial(inst, config, &params, opt, t))?;
    let aggregate = Aggregate::from_records(&records, instance.ground_size);
    Ok(TrialSet {
        config: config.clone(),
        params,
        records,
        aggregate,
    })
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6}")
}

/// Writes the versioned CSV: a version line, one row per trial, then a
/// `# aggregate` block of `key=value` lines.
pub fn write_csv<W: Write>(set: &TrialSet, out: W) -> Result<(), HarnessError> {
    let mut out = out;
    let io = |e: std::io::Error| HarnessError::Io {
        path: "<output>".into(),
        message: e.to_string(),
    };
    writeln!(out, "{CSV_VERSION}").map_err(io)?;
    let p = &set.params;
    writeln!(
        out,
        "# family={} algorithm={} trials={} f={} p={} r={}",
        set.config.instance.family.name(),
        set.config.algorithm,
        set.config.trials,
        p.f,
        p.p,
        p.r
    )
    .map_err(io)?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        for r in &set.records {
            w.serialize(r)?;
        }
        w.flush().map_err(io)?;
    }
    let a = &set.aggregate;
    writeln!(out, "# aggregate").map_err(io)?;
    for (k, v) in [
        ("trials", a.trials.to_string()),
        ("opt", a.opt.to_string()),
        ("mean_ratio", fmt_f(a.mean_ratio)),
        ("std_ratio", fmt_f(a.std_ratio)),
        ("std_err", fmt_f(a.std_err)),
        ("ci95_low", fmt_f(a.ci95_low)),
        ("ci95_high", fmt_f(a.ci95_high)),
        ("min_ratio", fmt_f(a.min_ratio)),
        ("max_ratio", fmt_f(a.max_ratio)),
        ("mean_picked", fmt_f(a.mean_picked)),
        ("mean_calls", fmt_f(a.mean_calls)),
        ("calls_per_element", fmt_f(a.calls_per_element)),
        ("marking_branch", a.marking_branch.to_string()),
    ] {
        writeln!(out, "# {k}={v}").map_err(io)?;
    }
    Ok(())
}

/// Paired comparison of two trial sets that share arrival seeds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairedDifference {
    pub mean: f64,
    pub std_err: f64,
    pub ci95_low: f64,
    /// The lower end of the 95% interval is above zero.
    pub positive: bool,
}

pub fn paired_difference(a: &[TrialRecord], b: &[TrialRecord]) -> PairedDifference {
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x.ratio - y.ratio).collect();
    let (mean, se) = mean_and_se(&diffs);
    let low = mean - 1.96 * se;
    PairedDifference {
        mean,
        std_err: se,
        ci95_low: low,
        positive: low > 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Family, InstanceSpec};

    fn cfg(family: Family, algorithm: Algorithm, trials: u64) -> ExperimentConfig {
        ExperimentConfig::new(InstanceSpec::new(family, 0), algorithm, trials)
    }

    #[test]
    fn csv_is_deterministic_across_thread_counts() {
        let mut c = cfg(Family::BalancedThickZ { n: 6 }, Algorithm::MarkingGreedy, 40);
        let render = |c: &ExperimentConfig| {
            let mut buf = Vec::new();
            write_csv(&run_trials(c).unwrap(), &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        c.threads = Some(1);
        let one = render(&c);
        c.threads = Some(4);
        assert_eq!(one, render(&c));
        assert!(one.starts_with(CSV_VERSION));
        assert!(one.contains("# aggregate"));
    }

    #[test]
    fn greedy_is_at_least_half() {
        for family in [
            Family::BalancedThickZ { n: 5 },
            Family::RandomGraphicPair { m: 30, vertices: 12 },
            Family::RandomPartitionPair { m: 40, classes: 10, max_capacity: 2 },
        ] {
            let c = cfg(family, Algorithm::Greedy, 30);
            let m = generate(&c.instance).unwrap().ground_size as u64;
            let set = run_trials(&c).unwrap();
            assert!(set.aggregate.min_ratio >= 0.5);
            assert!(set.records.iter().all(|r| r.total_calls <= 2 * m));
        }
    }

    #[test]
    fn every_algorithm_runs_where_supported() {
        let set = run_trials(&cfg(Family::BalancedThickZ { n: 4 }, Algorithm::Combined, 10)).unwrap();
        assert_eq!(set.records.len(), 10);
        for a in Algorithm::ALL {
            let r = run_trials(&cfg(Family::BalancedThickZ { n: 4 }, a, 5));
            assert!(r.is_ok(), "{a}: {r:?}");
        }
        assert!(run_trials(&cfg(Family::Bomb { n: 5 }, Algorithm::Greedy, 1)).is_err());
        assert!(run_trials(&cfg(Family::Bomb { n: 5 }, Algorithm::MarkingGreedyGeneral, 3)).is_ok());
        assert!(run_trials(&cfg(Family::KUniformFamily { ranks: vec![2, 3, 4], m: 8 }, Algorithm::Combined, 1)).is_err());
    }

    #[test]
    fn paired_difference_on_identical_sets_is_zero() {
        let set = run_trials(&cfg(Family::BalancedThickZ { n: 3 }, Algorithm::Greedy, 10)).unwrap();
        let d = paired_difference(&set.records, &set.records);
        assert_eq!(d.mean, 0.0);
        assert!(!d.positive);
    }
}
