use serde::{Deserialize, Serialize};

use super::OnlineError;

/// Tuning of the two-phase algorithms.
///
/// `f` is the fraction of the stream spent in the greedy phase, `p` the
/// marking probability, `r` the probability the coin-toss combination runs
/// marking-greedy. `epsilon` and `gamma` are the analysis constants `r` is
/// derived from; they are carried for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgoParams {
    pub f: f64,
    pub p: f64,
    pub r: f64,
    pub epsilon: f64,
    pub gamma: f64,
}

impl AlgoParams {
    pub fn new(f: f64, p: f64, epsilon: f64, gamma: f64) -> Self {
        AlgoParams {
            f,
            p,
            r: coin_probability(epsilon, gamma),
            epsilon,
            gamma,
        }
    }

    /// Bipartite matching defaults: `f = 0.07`, `p = 0.36`.
    pub fn bipartite() -> Self {
        Self::new(0.07, 0.36, 0.001, 0.05)
    }

    /// Two-matroid defaults: `f = 0.05`, `p = 0.33`.
    pub fn two_matroid() -> Self {
        Self::new(0.05, 0.33, 0.001, 0.03)
    }

    /// `k`-matroid defaults: `f = 1/k`, `p = 0.2`.
    pub fn k_matroid(k: usize) -> Self {
        Self::new(1.0 / k as f64, 0.2, 1e-10, 0.0)
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    /// Guaranteed improvement over one half of the coin-toss combination.
    pub fn delta(&self) -> f64 {
        self.epsilon * self.gamma / (0.5 + self.epsilon + self.gamma)
    }

    /// Number of elements in the greedy phase of an `m`-element stream.
    pub fn boundary(&self, m: usize) -> usize {
        ((self.f * m as f64).floor() as usize).min(m)
    }

    pub fn validate(&self) -> Result<(), OnlineError> {
        let bad = |what: &str, v: f64| OnlineError::Params(format!("{what} = {v} out of range"));
        if !(self.f > 0.0 && self.f <= 1.0) {
            return Err(bad("f", self.f));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(bad("p", self.p));
        }
        if !(0.0..=1.0).contains(&self.r) {
            return Err(bad("r", self.r));
        }
        Ok(())
    }
}

impl Default for AlgoParams {
    fn default() -> Self {
        Self::two_matroid()
    }
}

pub fn coin_probability(epsilon: f64, gamma: f64) -> f64 {
    epsilon / (0.5 + epsilon + gamma)
}
