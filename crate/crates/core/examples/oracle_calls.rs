//! Oracle calls per element stay flat as the instance grows.

use omi::harness::{bench_linear_calls, Algorithm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sizes = [1_000, 10_000, 100_000];
    for algorithm in [Algorithm::Greedy, Algorithm::MarkingGreedy, Algorithm::OfflineHalfPlusDelta] {
        let r = bench_linear_calls(algorithm, "random_partition_pair", &sizes, 3, 0)?;
        let per: Vec<String> = r.rows.iter().map(|row| format!("{:.3}", row.calls_per_element)).collect();
        println!(
            "{algorithm:<24} calls/element {}  slope {:.3}  R² {:.4}  growth {:.3}",
            per.join(" → "),
            r.slope,
            r.r_squared,
            r.growth
        );
    }
    Ok(())
}
