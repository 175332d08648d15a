use serde::Serialize;

use super::{par_trials, Algorithm, HarnessError, TrialSeeds};
use crate::instances::{generate, Family, InstanceSpec};

/// Families `sized_spec` can scale to a target ground-set size.
pub const BENCH_FAMILIES: [&str; 9] = [
    "random_partition_pair",
    "random_graphic_pair",
    "balanced_thick_z",
    "thick_z",
    "regular_bipartite",
    "er_bipartite",
    "bomb",
    "k_uniform_family",
    "hyper_thick_z",
];

fn isqrt(x: usize) -> usize {
    (x as f64).sqrt().floor() as usize
}

/// An instance of family `name` with roughly `m` elements. Partition pairs
/// use `m / 4` classes of capacity one.
pub fn sized_spec(name: &str, m: usize, seed: u64) -> Result<InstanceSpec, HarnessError> {
    let m = m.max(4);
    let family = match name {
        "random_partition_pair" => Family::RandomPartitionPair {
            m,
            classes: (m / 4).max(1),
            max_capacity: 1,
        },
        "random_graphic_pair" => Family::RandomGraphicPair {
            m,
            vertices: (m / 2).max(3),
        },
        // n^2 + 2n ≤ m
        "balanced_thick_z" => Family::BalancedThickZ {
            n: (isqrt(m + 1) - 1).max(1),
        },
        "thick_z" => {
            let n = (isqrt(m + 1) - 1).max(1);
            Family::ThickZ { n1: n, n2: (n / 2).max(1) }
        }
        "regular_bipartite" => Family::RegularBipartite { n: (m / 4).max(4), d: 4 },
        "er_bipartite" => {
            let n = isqrt(m * 10).max(2);
            Family::ErBipartite { n, prob: (m as f64 / (n * n) as f64).min(1.0) }
        }
        // n(n-1)/2 + n ≤ m
        "bomb" => Family::Bomb {
            n: ((isqrt(8 * m + 1) - 1) / 2).max(2),
        },
        "k_uniform_family" => Family::KUniformFamily {
            ranks: vec![m / 4, m / 3, m / 2],
            m,
        },
        "hyper_thick_z" => {
            let mut n = 1;
            while (n + 1usize).pow(3) + 3 * (n + 1) <= m {
                n += 1;
            }
            Family::HyperThickZ { k: 3, n }
        }
        "joined_thick_z" => Family::JoinedThickZ,
        other => {
            return Err(HarnessError::Config(format!(
                "unknown family `{other}` (expected one of {}, joined_thick_z)",
                BENCH_FAMILIES.join(", ")
            )))
        }
    };
    Ok(InstanceSpec::new(family, seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub mean_calls: f64,
    pub calls_per_element: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub algorithm: &'static str,
    pub family: String,
    pub rows: Vec<BenchRow>,
    /// Least-squares `C` in `calls ≈ C m`.
    pub slope: f64,
    pub r_squared: f64,
    /// Per-element calls at the largest size over those at the smallest.
    pub growth: f64,
    /// `growth > 1.25`.
    pub superlinear: bool,
}

/// Mean oracle calls of `algorithm` over `trials` seeded runs at each size.
pub fn bench_linear_calls(
    algorithm: Algorithm,
    family: &str,
    sizes: &[usize],
    trials: u64,
    seed: u64,
) -> Result<BenchReport, HarnessError> {
    if algorithm.on_graph() {
        return Err(HarnessError::Config(format!("{algorithm} makes no oracle calls")));
    }
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::Config("sizes must be non-empty and strictly ascending".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &target in sizes {
        let instance = generate(&sized_spec(family, target, seed)?)?;
        let params = algorithm.default_params(instance.matroids.len());
        let base = super::Seeds {
            order: seed,
            tape: seed ^ 1,
            coin: seed ^ 2,
        };
        let calls = par_trials(&instance, trials.max(1), None, |inst, t| {
            let run = super::run_algorithm(inst, algorithm, &params, TrialSeeds::for_trial(&base, t))?;
            Ok(run.total_calls() as f64)
        })?;
        let mean = calls.iter().sum::<f64>() / calls.len() as f64;
        rows.push(BenchRow {
            m: instance.ground_size,
            mean_calls: mean,
            calls_per_element: mean / instance.ground_size.max(1) as f64,
        });
    }
    let sxy: f64 = rows.iter().map(|r| r.m as f64 * r.mean_calls).sum();
    let sxx: f64 = rows.iter().map(|r| (r.m as f64).powi(2)).sum();
    let slope = sxy / sxx;
    let mean_y = rows.iter().map(|r| r.mean_calls).sum::<f64>() / rows.len() as f64;
    let ss_res: f64 = rows.iter().map(|r| (r.mean_calls - slope * r.m as f64).powi(2)).sum();
    let ss_tot: f64 = rows.iter().map(|r| (r.mean_calls - mean_y).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    let first = rows[0].calls_per_element;
    let last = rows[rows.len() - 1].calls_per_element;
    let growth = if first > 0.0 { last / first } else { 1.0 };
    Ok(BenchReport {
        algorithm: algorithm.name(),
        family: family.to_string(),
        rows,
        slope,
        r_squared,
        growth,
        superlinear: growth > 1.25,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_scales() {
        for name in BENCH_FAMILIES {
            for m in [50, 400] {
                let inst = generate(&sized_spec(name, m, 1).unwrap()).unwrap();
                assert!(inst.ground_size <= m.max(4) * 2, "{name} at {m}: {}", inst.ground_size);
                assert!(inst.ground_size > 0);
            }
        }
        assert!(sized_spec("nope", 10, 0).is_err());
    }

    #[test]
    fn greedy_bench_is_linear() {
        let r = bench_linear_calls(Algorithm::Greedy, "random_partition_pair", &[200, 2000], 2, 0).unwrap();
        assert!(r.rows.iter().all(|row| row.calls_per_element <= 2.0));
        assert!(!r.superlinear);
        assert!(bench_linear_calls(Algorithm::Greedy, "random_partition_pair", &[200, 100], 1, 0).is_err());
        assert!(bench_linear_calls(Algorithm::GreedyMatching, "bomb", &[20], 1, 0).is_err());
    }
}
