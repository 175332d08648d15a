//! Experiment runner: seeded trials, aggregate statistics, prefix curves,
//! batch verification of the sampling bound and oracle-call scaling.
//!
//! Every random choice in a trial is drawn from a seed derived from the
//! configured base seed and the trial index, so results do not depend on
//! how trials are scheduled across threads.

mod bench;
mod config;
mod curves;
mod lemmas;
mod trials;

use std::sync::Mutex;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::ExactError;
use crate::instances::{Instance, InstanceError};
use crate::matroid::MatroidError;
use crate::online::OnlineError;
use crate::sampling::SamplingError;

pub use bench::{bench_linear_calls, sized_spec, BenchReport, BenchRow, BENCH_FAMILIES};
pub use config::{Algorithm, ExperimentConfig, ParamsConfig, Seeds};
pub use curves::{estimate_gf_curve, hastiness_report, GfPoint, HastinessRow, PhiPoint};
pub use lemmas::{
    generate_corpus, load_corpus, verify_lemmas, write_lemma_csv, CorpusEntry, LemmaRow, LemmaSummary,
};
pub use trials::{
    instance_opt, paired_difference, run_algorithm, run_trials, run_trials_on, write_csv, Aggregate, PairedDifference,
    TrialRecord, TrialSeeds, TrialSet, CSV_VERSION,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Online(#[from] OnlineError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("config: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("trial {trial}: {what}")]
    Validation { trial: u64, what: String },
    #[error("{algorithm} cannot run on {family}: {why}")]
    Unsupported {
        algorithm: &'static str,
        family: &'static str,
        why: &'static str,
    },
}

pub(crate) fn io_err(path: &std::path::Path, e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Maps `f` over trial indices in parallel. Oracles count calls through
/// interior mutability, so each worker clones its own copy of `instance`.
/// Results come back in index order.
pub(crate) fn par_trials<T, F>(
    instance: &Instance,
    trials: u64,
    threads: Option<usize>,
    f: F,
) -> Result<Vec<T>, HarnessError>
where
    T: Send,
    F: Fn(&Instance, u64) -> Result<T, HarnessError> + Sync + Send,
{
    let template = Mutex::new(instance.clone());
    let work = || {
        (0..trials)
            .into_par_iter()
            .map_init(|| template.lock().expect("template lock").clone(), |inst, t| f(inst, t))
            .collect::<Result<Vec<_>, _>>()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Seed number `index` of the family rooted at `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

/// Sample mean and standard error of the mean.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
