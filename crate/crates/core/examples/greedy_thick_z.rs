//! Greedy on Thick-Z graphs: the ratio sits near one half and most of the
//! final solution is already built after a small prefix.

use omi::harness::{estimate_gf_curve, run_trials_on, Algorithm, ExperimentConfig};
use omi::instances::{generate, Family, InstanceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [10, 50, 100] {
        let inst = generate(&InstanceSpec::new(Family::BalancedThickZ { n }, 0))?;
        let cfg = ExperimentConfig::new(inst.spec.clone(), Algorithm::Greedy, 500);
        let set = run_trials_on(&inst, &cfg)?;
        let a = &set.aggregate;
        println!(
            "n = {n:>3}, m = {:>5}: greedy ratio {:.4} ± {:.4} (min {:.3})",
            inst.ground_size, a.mean_ratio, a.std_err, a.min_ratio
        );
    }
    let inst = generate(&InstanceSpec::new(Family::BalancedThickZ { n: 100 }, 0))?;
    let grid = [0.01, 0.05, 0.1, 0.25, 0.5, 1.0];
    println!("\nprefix curve G(f) on n = 100:");
    for p in estimate_gf_curve(&inst, 500, 1, &grid)? {
        println!("  f = {:<5} G = {:.4} ± {:.4}", p.f, p.mean, p.std_err);
    }
    Ok(())
}
