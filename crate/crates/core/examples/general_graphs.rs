//! Matching in non-bipartite graphs: the bomb graph traps greedy at one
//! half; marking-greedy runs on the graph directly.

use omi::harness::{run_trials_on, Algorithm, ExperimentConfig};
use omi::instances::{generate, Family, InstanceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [6, 20, 60] {
        let inst = generate(&InstanceSpec::new(Family::Bomb { n }, 0))?;
        print!("bomb n = {n:>2} ({} edges):", inst.ground_size);
        for algorithm in [Algorithm::GreedyMatching, Algorithm::MarkingGreedyGeneral] {
            let set = run_trials_on(&inst, &ExperimentConfig::new(inst.spec.clone(), algorithm, 500))?;
            print!("  {algorithm} {:.4}", set.aggregate.mean_ratio);
        }
        println!();
    }
    Ok(())
}
