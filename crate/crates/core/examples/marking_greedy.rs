//! Marking-greedy against greedy on the same arrival orders, for bipartite
//! matching and for the two-matroid encoding of the same graph.

use omi::harness::{paired_difference, run_trials_on, Algorithm, ExperimentConfig, ParamsConfig, Seeds};
use omi::instances::{generate, Family, InstanceSpec};
use omi::online::{marking_greedy_omi, AlgoParams, ArrivalStream, RandomnessTape};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate(&InstanceSpec::new(Family::BalancedThickZ { n: 100 }, 0))?;

    // one run, looking at the phases
    let ms = inst.matroid_refs();
    let params = AlgoParams::two_matroid();
    let mut stream = ArrivalStream::random(inst.ground_size, 7);
    let run = marking_greedy_omi(ms[0], ms[1], &mut stream, &params, &RandomnessTape::seeded(7, params.p))?;
    let ph = run.phases.as_ref().expect("two-phase run");
    println!(
        "single run: |T_f| = {}, kept |S| = {}, |N_1| = {}, |N_2| = {}, total {} of {}",
        ph.t_f.len(),
        ph.s.len(),
        ph.n[0].len(),
        ph.n[1].len(),
        run.size(),
        2 * 100
    );

    let seeds = Seeds { order: 1, tape: 2, coin: 3 };
    let pairs = [
        (Algorithm::MarkingGreedyBipartite, Algorithm::GreedyMatching, 0.07, 0.36),
        (Algorithm::MarkingGreedy, Algorithm::Greedy, 0.05, 0.33),
    ];
    for (marking, base, f, p) in pairs {
        let make = |algorithm| {
            let mut c = ExperimentConfig::new(inst.spec.clone(), algorithm, 500);
            c.params = ParamsConfig { f: Some(f), p: Some(p), ..Default::default() };
            c.seeds = seeds;
            c
        };
        let a = run_trials_on(&inst, &make(marking))?;
        let b = run_trials_on(&inst, &make(base))?;
        let d = paired_difference(&a.records, &b.records);
        println!(
            "{marking} {:.4} vs {base} {:.4}: difference {:+.4}, 95% lower end {:+.4}",
            a.aggregate.mean_ratio, b.aggregate.mean_ratio, d.mean, d.ci95_low
        );
    }
    Ok(())
}
