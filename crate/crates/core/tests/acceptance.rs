//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! straight to stderr (so it shows even when output is captured) and the
//! test fails if any criterion fails.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use omi::exact::{
    brute_force_intersection, brute_force_matching, exact_intersection, max_bipartite_matching, optimal_online_value,
};
use omi::harness::{
    bench_linear_calls, hastiness_report, instance_opt, load_corpus, paired_difference, run_trials_on, verify_lemmas,
    Algorithm, ExperimentConfig, ParamsConfig, Seeds, TrialSeeds,
};
use omi::instances::{
    gen_joined_thick_z, gen_random_graphic_pair, gen_random_partition_pair, gen_thick_z, generate, Family, Graph,
    Instance, InstanceSpec,
};
use omi::matroid::{contract, is_common_independent, AnyMatroid};
use omi::online::{
    combined_algorithm, greedy, greedy_matching, marking_greedy_bipartite, marking_greedy_general, marking_greedy_k,
    offline_half_plus_delta, AlgoParams, ArrivalStream, RandomnessTape, RunResult,
};
use omi::sampling::{contracted_greedy, random_setting, samp_alg_k, ScanOrder, SettingKind};
use omi::{Element, ElementSet, Matroid};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn report(n: usize, name: &str, o: &Outcome, took: Duration) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    let line = format!("[{tag}] criterion {n:>2} {name}: {} ({:.1}s)\n", o.detail, took.as_secs_f64());
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn spec(family: Family, seed: u64) -> InstanceSpec {
    InstanceSpec::new(family, seed)
}

fn config(instance: &Instance, algorithm: Algorithm, trials: u64, f: f64, p: f64, seeds: Seeds) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(instance.spec.clone(), algorithm, trials);
    c.params = ParamsConfig {
        f: Some(f),
        p: Some(p),
        ..Default::default()
    };
    c.seeds = seeds;
    c
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn c1_sampling_exact() -> Outcome {
    let start = Instant::now();
    let entries = load_corpus(&corpus_dir()).expect("shipped corpus loads");
    let shape_ok = entries.iter().all(|e| {
        let s = &e.setting;
        let ps: Vec<BigRational> = s.probabilities.clone();
        s.t.len() <= 12
            && s.orders.len() >= 3
            && [q(1, 10), q(33, 100), q(36, 100), q(1, 2), q(9, 10)]
                .iter()
                .all(|p| ps.contains(p))
    });
    let (_, summary) = verify_lemmas(&entries, 0, 0, 0).expect("verification runs");
    let took = start.elapsed();
    outcome(
        entries.len() >= 200 && shape_ok && summary.exact_violations == 0 && took < Duration::from_secs(120),
        format!(
            "{} instances, {} exact comparisons, {} violations, shape ok = {shape_ok}",
            entries.len(),
            summary.exact_checks,
            summary.exact_violations
        ),
    )
}

fn c2_samp_alg_equivalence() -> Outcome {
    let kinds = [SettingKind::Partition, SettingKind::Graphic, SettingKind::Mixed];
    let results: Vec<(usize, usize)> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC2 ^ (i << 8));
            let k = if i % 5 == 4 { 3 } else { 2 };
            let m = rng.gen_range(8..=16);
            let s = random_setting(&mut rng, kinds[i as usize % 3], k, m, 8);
            let ms = s.refs();
            let primary = ms[s.branch];
            let others: Vec<&dyn Matroid> =
                ms.iter().enumerate().filter(|&(j, _)| j != s.branch).map(|(_, m)| *m).collect();
            let mut order = s.orders[0].1.clone();
            order.shuffle(&mut rng);
            let p = rng.gen_range(0.05..0.95);
            let tape = RandomnessTape::seeded(rng.gen(), p);
            let kept: ElementSet = s.t.iter().filter(|&e| tape.bit(e)).collect();
            // greedy on the real contractions over the same order
            let mut wrapped: Vec<Box<dyn Matroid>> = vec![Box::new(contract(primary, &kept).unwrap())];
            for o in &others {
                wrapped.push(Box::new(contract(*o, &s.t).unwrap()));
            }
            let refs: Vec<&dyn Matroid> = wrapped.iter().map(|b| b.as_ref()).collect();
            let slow = greedy(&refs, &mut ArrivalStream::from_order(order.clone())).unwrap().picked;
            let mut mismatches = usize::from(contracted_greedy(primary, &others, &kept, &s.t, &order) != slow);
            for scan in [ScanOrder::Ascending, ScanOrder::Descending] {
                let out = samp_alg_k(primary, &others, &s.t, &tape, &order, scan).unwrap();
                mismatches += usize::from(out.n != slow);
            }
            (3, mismatches)
        })
        .collect();
    let checks: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    outcome(bad == 0, format!("1000 instances, {checks} comparisons, {bad} mismatches"))
}

/// Every family at a size where brute-force optima are cheap.
fn small_pool(seed: u64) -> Vec<InstanceSpec> {
    vec![
        spec(Family::RandomPartitionPair { m: 30, classes: 8, max_capacity: 2 }, seed),
        spec(Family::RandomGraphicPair { m: 24, vertices: 9 }, seed),
        spec(Family::BalancedThickZ { n: 4 }, seed),
        spec(Family::ThickZ { n1: 4, n2: 2 }, seed),
        spec(Family::JoinedThickZ, seed),
        spec(Family::Bomb { n: 5 }, seed),
        spec(Family::RegularBipartite { n: 8, d: 3 }, seed),
        spec(Family::ErBipartite { n: 6, prob: 0.4 }, seed),
        spec(Family::KUniformFamily { ranks: vec![3, 5, 7], m: 16 }, seed),
        spec(Family::HyperThickZ { k: 3, n: 2 }, seed),
    ]
}

/// Pool with every ground set of at most six elements.
fn tiny_pool() -> Vec<InstanceSpec> {
    vec![
        spec(Family::RandomPartitionPair { m: 6, classes: 3, max_capacity: 2 }, 1),
        spec(Family::RandomPartitionPair { m: 6, classes: 2, max_capacity: 1 }, 2),
        spec(Family::RandomGraphicPair { m: 6, vertices: 4 }, 3),
        spec(Family::BalancedThickZ { n: 1 }, 0),
        spec(Family::ThickZ { n1: 2, n2: 1 }, 0),
        spec(Family::Bomb { n: 2 }, 0),
        spec(Family::Bomb { n: 3 }, 0),
        spec(Family::RegularBipartite { n: 3, d: 2 }, 4),
        spec(Family::KUniformFamily { ranks: vec![2, 3, 4], m: 6 }, 0),
        spec(Family::HyperThickZ { k: 3, n: 1 }, 0),
    ]
}

fn dispatch(
    instance: &Instance,
    algorithm: Algorithm,
    params: &AlgoParams,
    order: Vec<Element>,
    tape: &RandomnessTape,
    coin: u64,
) -> Option<RunResult> {
    let mut stream = ArrivalStream::from_order(order);
    let ms = instance.matroid_refs();
    let res = match (algorithm, &instance.graph) {
        (Algorithm::GreedyMatching, Some(g)) => greedy_matching(g, &mut stream),
        (Algorithm::MarkingGreedyBipartite, Some(g)) => marking_greedy_bipartite(g, &mut stream, params, tape),
        (Algorithm::MarkingGreedyGeneral, Some(g)) => marking_greedy_general(g, &mut stream, params, tape),
        (Algorithm::Greedy, _) if !ms.is_empty() => greedy(&ms, &mut stream),
        (Algorithm::MarkingGreedy, _) if ms.len() >= 2 => marking_greedy_k(&ms, &mut stream, params, tape),
        (Algorithm::Combined, _) if ms.len() == 2 => combined_algorithm(ms[0], ms[1], &mut stream, params, tape, coin),
        (Algorithm::OfflineHalfPlusDelta, _) if ms.len() == 2 => {
            offline_half_plus_delta(ms[0], ms[1], stream.order(), params, tape)
        }
        _ => return None,
    };
    res.ok()
}

/// Feasible in every constraint of the instance, and for greedy at least
/// `|OPT| / k`.
fn check_run(instance: &Instance, algorithm: Algorithm, run: &RunResult, opt: usize) -> (bool, bool) {
    let mut ok = true;
    if let Some(g) = &instance.graph {
        ok &= g.is_matching(&run.picked);
    }
    if !instance.matroids.is_empty() {
        ok &= is_common_independent(&instance.matroid_refs(), &run.picked).unwrap_or(false);
    }
    let half = match algorithm {
        Algorithm::Greedy => run.size() * instance.matroids.len() >= opt,
        Algorithm::GreedyMatching => 2 * run.size() >= opt,
        _ => true,
    };
    (ok, half)
}

fn permutations(m: usize) -> Vec<Vec<Element>> {
    fn go(rest: &mut Vec<Element>, cur: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let e = rest.remove(i);
            cur.push(e);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, e);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..m).map(Element).collect(), &mut Vec::new(), &mut out);
    out
}

#[derive(Default)]
struct SafetyTally {
    runs: u64,
    infeasible: u64,
    greedy_runs: u64,
    below_half: u64,
}

impl SafetyTally {
    fn add(&mut self, o: &SafetyTally) {
        self.runs += o.runs;
        self.infeasible += o.infeasible;
        self.greedy_runs += o.greedy_runs;
        self.below_half += o.below_half;
    }
}

fn tally(instance: &Instance, algorithm: Algorithm, run: &RunResult, opt: usize, t: &mut SafetyTally) {
    let (ok, half) = check_run(instance, algorithm, run, opt);
    t.runs += 1;
    t.infeasible += u64::from(!ok);
    if matches!(algorithm, Algorithm::Greedy | Algorithm::GreedyMatching) {
        t.greedy_runs += 1;
        t.below_half += u64::from(!half);
    }
}

const PARAM_GRID: [(f64, f64); 4] = [(0.05, 0.33), (0.07, 0.36), (0.3, 0.2), (0.5, 0.5)];

/// Randomized and exhaustive runs of every algorithm; returns the tally
/// shared by the safety and half-bound criteria.
fn safety_runs() -> (SafetyTally, SafetyTally) {
    const RUNS_PER_ALGORITHM: u64 = 100_000;
    let pool: Vec<(Instance, usize)> = (0..10)
        .flat_map(small_pool)
        .map(|s| {
            let inst = generate(&s).unwrap();
            let opt = instance_opt(&inst).unwrap();
            (inst, opt)
        })
        .collect();
    let seeds = Seeds { order: 31, tape: 32, coin: 33 };
    let mut random = SafetyTally::default();
    for algorithm in Algorithm::ALL {
        let params0 = algorithm.default_params(2);
        let usable: Vec<&(Instance, usize)> = pool
            .iter()
            .filter(|(inst, _)| {
                let order = (0..inst.ground_size).map(Element).collect();
                dispatch(inst, algorithm, &params0, order, &RandomnessTape::all_ones(inst.ground_size), 0).is_some()
            })
            .collect();
        let part = (0..RUNS_PER_ALGORITHM)
            .into_par_iter()
            .fold(SafetyTally::default, |mut t, i| {
                let (inst, opt) = usable[i as usize % usable.len()];
                let s = TrialSeeds::for_trial(&seeds, i);
                let (f, p) = PARAM_GRID[(i / usable.len() as u64) as usize % PARAM_GRID.len()];
                let base = algorithm.default_params(inst.matroids.len());
                let params = AlgoParams::new(f, p, base.epsilon, base.gamma);
                let order = ArrivalStream::random(inst.ground_size, s.order).order().to_vec();
                let tape = RandomnessTape::seeded(s.tape, p);
                let run = dispatch(inst, algorithm, &params, order, &tape, s.coin).expect("usable pair runs");
                tally(inst, algorithm, &run, *opt, &mut t);
                t
            })
            .reduce(SafetyTally::default, |mut a, b| {
                a.add(&b);
                a
            });
        random.add(&part);
    }
    let mut exhaustive = SafetyTally::default();
    for s in tiny_pool() {
        let inst = generate(&s).unwrap();
        assert!(inst.ground_size <= 6, "{:?}", s.family);
        let opt = instance_opt(&inst).unwrap();
        let perms = permutations(inst.ground_size);
        for algorithm in Algorithm::ALL {
            for (k, &(f, p)) in PARAM_GRID.iter().enumerate() {
                let base = algorithm.default_params(inst.matroids.len());
                let params = AlgoParams::new(f, p, base.epsilon, base.gamma);
                let tapes = [
                    RandomnessTape::seeded(k as u64, p),
                    RandomnessTape::all_ones(inst.ground_size),
                    RandomnessTape::all_zeros(inst.ground_size),
                ];
                for perm in &perms {
                    for (j, tape) in tapes.iter().enumerate() {
                        if let Some(run) = dispatch(&inst, algorithm, &params, perm.clone(), tape, j as u64) {
                            tally(&inst, algorithm, &run, opt, &mut exhaustive);
                        }
                    }
                }
            }
        }
    }
    (random, exhaustive)
}

fn c3_safety(random: &SafetyTally, exhaustive: &SafetyTally) -> Outcome {
    outcome(
        random.runs >= 7 * 100_000 && random.infeasible == 0 && exhaustive.infeasible == 0,
        format!(
            "{} randomized runs, {} exhaustive-order runs, {} infeasible",
            random.runs,
            exhaustive.runs,
            random.infeasible + exhaustive.infeasible
        ),
    )
}

fn c4_half_bound(random: &SafetyTally, exhaustive: &SafetyTally) -> Outcome {
    let runs = random.greedy_runs + exhaustive.greedy_runs;
    let bad = random.below_half + exhaustive.below_half;
    outcome(bad == 0 && runs > 0, format!("{runs} greedy runs, {bad} below |OPT|/k"))
}

fn c5_online_dp() -> Outcome {
    let start = Instant::now();
    let thick = optimal_online_value(&gen_thick_z(1, 1).unwrap()).unwrap().expected_value;
    let joined = optimal_online_value(&gen_joined_thick_z()).unwrap().expected_value;
    let opt = max_bipartite_matching(&gen_joined_thick_z()).unwrap().opt_size as i64;
    let ratio = joined.clone() / q(opt, 1);
    let took = start.elapsed();
    outcome(
        thick == q(5, 3) && ratio <= q(69, 84) && took < Duration::from_secs(1),
        format!("Thick-Z(1) = {thick}, joined Thick-Z = {joined} over OPT {opt} = {ratio} (69/84 bound)"),
    )
}

fn c6_thick_z_collapse() -> Outcome {
    let inst = generate(&spec(Family::BalancedThickZ { n: 100 }, 0)).unwrap();
    let set = run_trials_on(&inst, &ExperimentConfig::new(inst.spec.clone(), Algorithm::Greedy, 2000)).unwrap();
    let a = &set.aggregate;
    let upper = 0.5 + 6.0 * 200f64.powf(-1.0 / 3.0);
    outcome(
        a.mean_ratio <= upper + 3.0 * a.std_err && a.min_ratio >= 0.5,
        format!(
            "mean ratio {:.4} ± {:.4}, min {:.4}, upper bound {upper:.4}",
            a.mean_ratio, a.std_err, a.min_ratio
        ),
    )
}

fn c7_regular_greedy() -> Outcome {
    let inst = generate(&spec(Family::RegularBipartite { n: 200, d: 8 }, 7)).unwrap();
    let set = run_trials_on(&inst, &ExperimentConfig::new(inst.spec.clone(), Algorithm::GreedyMatching, 2000)).unwrap();
    // every vertex lies on the perfect matching, so the ratio is the matched fraction
    let a = &set.aggregate;
    let target = 1.0 - (-1.0f64).exp();
    outcome(
        a.opt == 200 && a.mean_ratio >= target - 3.0 * a.std_err,
        format!("matched fraction {:.4} ± {:.4} vs {target:.4}", a.mean_ratio, a.std_err),
    )
}

fn paired(instance: &Instance, marking: Algorithm, base: Algorithm, f: f64, p: f64) -> (bool, String) {
    let seeds = Seeds { order: 800, tape: 801, coin: 802 };
    let a = run_trials_on(instance, &config(instance, marking, 2000, f, p, seeds)).unwrap();
    let b = run_trials_on(instance, &config(instance, base, 2000, f, p, seeds)).unwrap();
    let d = paired_difference(&a.records, &b.records);
    (
        d.positive,
        format!(
            "{} {:.4} vs {} {:.4}, diff {:+.4} (95% low {:+.4})",
            marking, a.aggregate.mean_ratio, base, b.aggregate.mean_ratio, d.mean, d.ci95_low
        ),
    )
}

fn c8_beating_half() -> Outcome {
    let thick = generate(&spec(Family::BalancedThickZ { n: 200 }, 0)).unwrap();
    let hyper = generate(&spec(Family::HyperThickZ { k: 3, n: 20 }, 0)).unwrap();
    let checks = [
        paired(&thick, Algorithm::MarkingGreedyBipartite, Algorithm::GreedyMatching, 0.07, 0.36),
        paired(&thick, Algorithm::MarkingGreedy, Algorithm::Greedy, 0.05, 0.33),
        paired(&hyper, Algorithm::MarkingGreedy, Algorithm::Greedy, 1.0 / 3.0, 0.2),
    ];
    let pass = checks.iter().all(|c| c.0);
    let names = ["bipartite", "two matroids", "k=3"];
    let detail = names
        .iter()
        .zip(&checks)
        .map(|(n, c)| format!("{n}: {}", c.1))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn c9_hastiness() -> Outcome {
    let inst = generate(&spec(Family::BalancedThickZ { n: 100 }, 0)).unwrap();
    let (eps, rows) = hastiness_report(&inst, 2000, 900, &[0.05, 0.07, 0.1, 0.25]).unwrap();
    let g_ok = rows.iter().all(|r| r.holds);
    let phi_ok = rows.iter().all(|r| r.phi.is_some_and(|p| p.holds()));
    let detail = rows
        .iter()
        .map(|r| format!("G({}) = {:.4} ≥ {:.4}", r.f, r.g, r.bound))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(g_ok && phi_ok, format!("ε = {eps:.4}; {detail}; Φ bounds hold = {phi_ok}"))
}

fn c10_linear_calls() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for algorithm in [Algorithm::MarkingGreedy, Algorithm::OfflineHalfPlusDelta] {
        let r = bench_linear_calls(algorithm, "random_partition_pair", &[1000, 100_000], 3, 10).unwrap();
        let ok = (r.growth - 1.0).abs() < 0.25;
        pass &= ok;
        parts.push(format!(
            "{algorithm}: {:.3} → {:.3} calls/element",
            r.rows[0].calls_per_element, r.rows[1].calls_per_element
        ));
    }
    let mut greedy_max = 0.0f64;
    for m in [1000, 100_000] {
        let inst = generate(&spec(Family::RandomPartitionPair { m, classes: m / 4, max_capacity: 1 }, 10)).unwrap();
        let seeds = Seeds { order: 10, tape: 11, coin: 12 };
        for t in 0..20 {
            let run = omi::harness::run_algorithm(
                &inst,
                Algorithm::Greedy,
                &AlgoParams::two_matroid(),
                TrialSeeds::for_trial(&seeds, t),
            )
            .unwrap();
            greedy_max = greedy_max.max(run.total_calls() as f64 / m as f64);
        }
    }
    pass &= greedy_max <= 2.0;
    parts.push(format!("greedy max {greedy_max:.3} calls/element"));
    outcome(pass, parts.join("; "))
}

fn random_small_pair(rng: &mut ChaCha8Rng) -> (AnyMatroid, AnyMatroid, usize) {
    let m = rng.gen_range(1..=10);
    let pick = |rng: &mut ChaCha8Rng| -> AnyMatroid {
        if rng.gen_bool(0.5) {
            let classes = rng.gen_range(1..=m.max(1));
            gen_random_partition_pair(m, classes, 3, rng).unwrap().0.into()
        } else {
            gen_random_graphic_pair(m, rng.gen_range(2..=6), rng).unwrap().0.into()
        }
    };
    let a = pick(rng);
    let b = pick(rng);
    (a, b, m)
}

fn c11_exact_cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1100);
    let mut matroid_bad = 0;
    for _ in 0..500 {
        let (a, b, m) = random_small_pair(&mut rng);
        let ground: Vec<Element> = (0..m).map(Element).collect();
        let fast = exact_intersection(&a, &b, &ground).unwrap();
        let slow = brute_force_intersection(&[&a, &b], &ground).unwrap();
        let feasible = is_common_independent(&[&a, &b], &fast.opt_set.sorted()).unwrap();
        matroid_bad += usize::from(fast.opt_size != slow.opt_size || !feasible);
    }
    let mut matching_bad = 0;
    for _ in 0..500 {
        let left = rng.gen_range(1..=5);
        let right = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=10);
        let edges = (0..m).map(|_| (rng.gen_range(0..left), left + rng.gen_range(0..right))).collect();
        let g = Graph::bipartite(left, right, edges).unwrap();
        let hk = max_bipartite_matching(&g).unwrap();
        let bf = brute_force_matching(&g).unwrap();
        matching_bad += usize::from(hk.opt_size != bf.opt_size || !g.is_matching(&hk.opt_set.sorted()));
    }
    outcome(
        matroid_bad == 0 && matching_bad == 0,
        format!("intersection mismatches {matroid_bad}/500, matching mismatches {matching_bad}/500"),
    )
}

fn omi(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_omi")).args(args).output().expect("omi runs");
    assert!(out.status.success(), "omi {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn c12_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("omi-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.toml");
    std::fs::write(
        &cfg,
        "algorithm = \"combined\"\ntrials = 300\n\n[instance]\nfamily = \"random_partition_pair\"\nm = 400\nclasses = 100\nseed = 5\n\n[seeds]\norder = 3\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let corpus = corpus_dir();
    let corpus = corpus.to_str().unwrap();
    let gen_a = dir.join("a.txt");
    let gen_b = dir.join("b.txt");
    let pairs: Vec<(&str, Vec<u8>, Vec<u8>)> = vec![
        ("run threads 1 vs 4", omi(&["run", "--config", c, "--threads", "1"]), omi(&["run", "--config", c, "--threads", "4"])),
        ("run repeated", omi(&["run", "--config", c]), omi(&["run", "--config", c])),
        (
            "gf-curve",
            omi(&["gf-curve", "--size", "2000", "--trials", "200", "--hastiness"]),
            omi(&["gf-curve", "--size", "2000", "--trials", "200", "--hastiness"]),
        ),
        (
            "verify-lemmas",
            omi(&["verify-lemmas", "--corpus", corpus, "--mc-samples", "200", "--invariant-tapes", "4"]),
            omi(&["verify-lemmas", "--corpus", corpus, "--mc-samples", "200", "--invariant-tapes", "4"]),
        ),
        (
            "bench",
            omi(&["bench", "--family", "random_graphic_pair", "--sizes", "500,5000"]),
            omi(&["bench", "--family", "random_graphic_pair", "--sizes", "500,5000"]),
        ),
        ("gen", {
            omi(&["gen", "--family", "random_graphic_pair", "--size", "300", "--seed", "4", "--out", gen_a.to_str().unwrap()]);
            std::fs::read(&gen_a).unwrap()
        }, {
            omi(&["gen", "--family", "random_graphic_pair", "--size", "300", "--seed", "4", "--out", gen_b.to_str().unwrap()]);
            std::fs::read(&gen_b).unwrap()
        }),
    ];
    let _ = std::fs::remove_dir_all(&dir);
    let differing: Vec<&str> = pairs.iter().filter(|(_, a, b)| a != b || a.is_empty()).map(|p| p.0).collect();
    outcome(
        differing.is_empty(),
        format!("{} invocation pairs compared, differing: {differing:?}", pairs.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let mut all = true;
    let mut step = |n: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        report(n, name, &o, start.elapsed());
        all &= o.pass;
    };
    step(1, "sampling bound, exact", &mut c1_sampling_exact);
    step(2, "deferred sampling equals contracted greedy", &mut c2_samp_alg_equivalence);
    let mut tallies = None;
    step(3, "feasibility of every run", &mut || {
        let (random, exhaustive) = tallies.get_or_insert_with(safety_runs);
        c3_safety(random, exhaustive)
    });
    let (random, exhaustive) = tallies.as_ref().expect("filled by criterion 3");
    step(4, "greedy half bound", &mut || c4_half_bound(random, exhaustive));
    step(5, "optimal online value", &mut c5_online_dp);
    step(6, "greedy collapse on Thick-Z", &mut c6_thick_z_collapse);
    step(7, "greedy on regular bipartite graphs", &mut c7_regular_greedy);
    step(8, "marking-greedy beats greedy", &mut c8_beating_half);
    step(9, "hastiness, empirical", &mut c9_hastiness);
    step(10, "linear oracle calls", &mut c10_linear_calls);
    step(11, "exact optima cross-validation", &mut c11_exact_cross_validation);
    step(12, "CLI determinism", &mut c12_determinism);
    assert!(all, "at least one acceptance criterion failed");
}
