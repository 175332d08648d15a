use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{io_err, HarnessError};
use crate::instances::InstanceSpec;
use crate::online::AlgoParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Greedy over the matroids of the instance.
    Greedy,
    /// Two-phase marking-greedy over the matroids (any `k ≥ 2`).
    MarkingGreedy,
    /// Coin toss between greedy and marking-greedy (two matroids).
    Combined,
    /// Single-pass offline variant (two matroids).
    OfflineHalfPlusDelta,
    /// Greedy matching on the instance graph.
    GreedyMatching,
    /// Marking-greedy on a bipartite instance graph.
    MarkingGreedyBipartite,
    /// Marking-greedy on a general instance graph.
    MarkingGreedyGeneral,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Greedy,
        Algorithm::MarkingGreedy,
        Algorithm::Combined,
        Algorithm::OfflineHalfPlusDelta,
        Algorithm::GreedyMatching,
        Algorithm::MarkingGreedyBipartite,
        Algorithm::MarkingGreedyGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::MarkingGreedy => "marking-greedy",
            Algorithm::Combined => "combined",
            Algorithm::OfflineHalfPlusDelta => "offline-half-plus-delta",
            Algorithm::GreedyMatching => "greedy-matching",
            Algorithm::MarkingGreedyBipartite => "marking-greedy-bipartite",
            Algorithm::MarkingGreedyGeneral => "marking-greedy-general",
        }
    }

    /// Works on the graph rather than on matroid oracles.
    pub fn on_graph(self) -> bool {
        matches!(
            self,
            Algorithm::GreedyMatching | Algorithm::MarkingGreedyBipartite | Algorithm::MarkingGreedyGeneral
        )
    }

    /// Defaults for `f`, `p`, `ε`, `γ` given the number of matroids.
    pub fn default_params(self, k: usize) -> AlgoParams {
        if self.on_graph() {
            AlgoParams::bipartite()
        } else if k > 2 {
            AlgoParams::k_matroid(k)
        } else {
            AlgoParams::two_matroid()
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm `{s}` (expected one of {})", names.join(", "))
            })
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Overrides for [`AlgoParams`]; unset fields take the algorithm default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub f: Option<f64>,
    pub p: Option<f64>,
    pub epsilon: Option<f64>,
    pub gamma: Option<f64>,
    /// Coin probability; derived from `epsilon` and `gamma` when unset.
    pub r: Option<f64>,
}

impl ParamsConfig {
    pub fn resolve(&self, base: AlgoParams) -> AlgoParams {
        let mut p = AlgoParams::new(
            self.f.unwrap_or(base.f),
            self.p.unwrap_or(base.p),
            self.epsilon.unwrap_or(base.epsilon),
            self.gamma.unwrap_or(base.gamma),
        );
        if let Some(r) = self.r {
            p.r = r;
        }
        p
    }
}

/// Base seeds for arrival orders, marking tapes and coin tosses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    #[serde(default)]
    pub order: u64,
    #[serde(default = "one")]
    pub tape: u64,
    #[serde(default = "two")]
    pub coin: u64,
}

fn one() -> u64 {
    1
}

fn two() -> u64 {
    2
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds {
            order: 0,
            tape: 1,
            coin: 2,
        }
    }
}

/// One experiment, read from TOML:
///
/// ```toml
/// algorithm = "marking-greedy"
/// trials = 2000
/// threads = 4
///
/// [instance]
/// family = "balanced_thick_z"
/// n = 200
///
/// [params]
/// f = 0.07
/// p = 0.36
///
/// [seeds]
/// order = 11
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub algorithm: Algorithm,
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default = "one_trial")]
    pub trials: u64,
    #[serde(default)]
    pub seeds: Seeds,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Worker threads; `None` uses the global pool.
    #[serde(default)]
    pub threads: Option<usize>,
    /// Adds a wall-clock column, which makes the output non-reproducible.
    #[serde(default)]
    pub timing: bool,
}

fn one_trial() -> u64 {
    1
}

impl ExperimentConfig {
    pub fn new(instance: InstanceSpec, algorithm: Algorithm, trials: u64) -> Self {
        ExperimentConfig {
            instance,
            algorithm,
            params: ParamsConfig::default(),
            trials,
            seeds: Seeds::default(),
            out: None,
            threads: None,
            timing: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Parameters after applying overrides to the algorithm defaults.
    pub fn algo_params(&self, k: usize) -> AlgoParams {
        self.params.resolve(self.algorithm.default_params(k))
    }
}
