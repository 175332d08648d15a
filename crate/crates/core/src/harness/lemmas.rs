use std::io::Write;
use std::path::Path;

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{derive_seed, io_err, HarnessError};
use crate::matroid::format::{self, MatroidFile};
use crate::matroid::{Element, ElementSet, PartitionMatroid};
use crate::sampling::{
    exact_probability, random_setting, verify_sampling_lemma_k, Expectation, LemmaSetting, Method, SettingKind, Value,
    CORPUS_PROBABILITIES,
};

/// File extension of corpus entries.
pub const CORPUS_EXT: &str = "omi";

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub setting: LemmaSetting,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaRow {
    pub instance: String,
    pub order: String,
    pub p: String,
    pub t_size: usize,
    pub i_size: usize,
    pub method: &'static str,
    /// Exact rational for enumeration, decimal mean for Monte-Carlo.
    pub lhs: String,
    pub lhs_f64: f64,
    pub std_err: f64,
    pub rhs: String,
    pub rhs_f64: f64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaSummary {
    pub instances: usize,
    pub exact_checks: usize,
    pub exact_violations: usize,
    pub mc_checks: usize,
    /// Monte-Carlo means more than three standard errors below the bound.
    /// Expected at a small rate even when the bound holds.
    pub mc_alarms: usize,
    pub invariant_replays: usize,
}

impl LemmaSummary {
    /// The exact comparisons decide; Monte-Carlo alarms are reported only.
    pub fn all_hold(&self) -> bool {
        self.exact_violations == 0
    }
}

/// Reads every `*.omi` file of `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, HarnessError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == CORPUS_EXT))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            let file = format::parse(&text).map_err(|e| io_err(&path, e))?;
            let setting = LemmaSetting::from_file(&file).map_err(|e| io_err(&path, e))?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(CorpusEntry { name, setting })
        })
        .collect()
}

fn row(entry: &CorpusEntry, order: &str, p: &num::BigRational, method: Method, lhs: &Value, rhs: &num::BigRational, holds: bool) -> LemmaRow {
    let (lhs_text, std_err) = match lhs {
        Value::Exact(q) => (q.to_string(), 0.0),
        Value::Estimate { mean, std_err } => (format!("{mean:.6}"), *std_err),
    };
    LemmaRow {
        instance: entry.name.clone(),
        order: order.to_string(),
        p: p.to_string(),
        t_size: entry.setting.t.len(),
        i_size: entry.setting.i_tilde.len(),
        method: match method {
            Method::ExactEnumeration => "exact-enumeration",
            Method::MonteCarlo => "monte-carlo",
        },
        lhs: lhs_text,
        lhs_f64: lhs.as_f64(),
        std_err,
        rhs: rhs.to_string(),
        rhs_f64: rhs.to_f64().unwrap_or(f64::NAN),
        holds,
    }
}

/// Exact check of every (order, p) pair of every entry, a Monte-Carlo check
/// per p on the first order when `mc_samples > 0`, and an invariant replay
/// on up to `invariant_tapes` tapes per order.
pub fn verify_lemmas(
    entries: &[CorpusEntry],
    mc_samples: u64,
    invariant_tapes: u64,
    seed: u64,
) -> Result<(Vec<LemmaRow>, LemmaSummary), HarnessError> {
    let per_entry: Vec<(Vec<LemmaRow>, usize)> = entries
        .par_iter()
        .enumerate()
        .map(|(idx, entry)| -> Result<_, HarnessError> {
            let s = &entry.setting;
            let mut rows = Vec::new();
            for check in s.verify_exact()? {
                let r = &check.report;
                rows.push(row(entry, &check.order, &check.p, r.method, &r.lhs, &r.rhs, r.holds));
            }
            if mc_samples > 0 {
                let ms = s.refs();
                let (name, order) = &s.orders[0];
                for (k, p) in s.probabilities.iter().enumerate() {
                    let how = Expectation::MonteCarlo {
                        samples: mc_samples,
                        seed: derive_seed(seed, (idx * 16 + k) as u64),
                    };
                    let r = verify_sampling_lemma_k(&ms, s.branch, &s.t, order, &s.i_tilde, p, how)?;
                    rows.push(row(entry, name, p, r.method, &r.lhs, &r.rhs, r.holds));
                }
            }
            let replays = if invariant_tapes > 0 { s.check_invariants(invariant_tapes)? } else { 0 };
            Ok((rows, replays))
        })
        .collect::<Result<_, _>>()?;
    let mut summary = LemmaSummary {
        instances: entries.len(),
        ..Default::default()
    };
    let mut rows = Vec::new();
    for (rs, replays) in per_entry {
        summary.invariant_replays += replays;
        for r in rs {
            let exact = r.method == "exact-enumeration";
            match (exact, r.holds) {
                (true, ok) => {
                    summary.exact_checks += 1;
                    summary.exact_violations += usize::from(!ok);
                }
                (false, ok) => {
                    summary.mc_checks += 1;
                    summary.mc_alarms += usize::from(!ok);
                }
            }
            rows.push(r);
        }
    }
    Ok((rows, summary))
}

pub fn write_lemma_csv<W: Write>(rows: &[LemmaRow], summary: &LemmaSummary, out: W) -> Result<(), HarnessError> {
    let mut out = out;
    let io = |e: std::io::Error| HarnessError::Io {
        path: "<output>".into(),
        message: e.to_string(),
    };
    writeln!(out, "# omi-lemmas v1").map_err(io)?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        for r in rows {
            w.serialize(r)?;
        }
        w.flush().map_err(io)?;
    }
    writeln!(out, "# aggregate").map_err(io)?;
    for (k, v) in [
        ("instances", summary.instances),
        ("exact_checks", summary.exact_checks),
        ("exact_violations", summary.exact_violations),
        ("mc_checks", summary.mc_checks),
        ("mc_alarms", summary.mc_alarms),
        ("invariant_replays", summary.invariant_replays),
    ] {
        writeln!(out, "# {k}={v}").map_err(io)?;
    }
    Ok(())
}

/// The smallest setting: `T = {0}`, `Ĩ = {1}`, element 1 shares a class
/// with 0 in the sampled matroid and is free in the other.
fn gadget() -> MatroidFile {
    let setting = LemmaSetting {
        matroids: vec![PartitionMatroid::unit(vec![0, 0]).into(), PartitionMatroid::unit(vec![0, 1]).into()],
        branch: 0,
        t: ElementSet::from_indices([0]),
        i_tilde: ElementSet::from_indices([1]),
        orders: ["asc", "desc", "random"].iter().map(|n| (n.to_string(), vec![Element(1)])).collect(),
        probabilities: CORPUS_PROBABILITIES
            .iter()
            .map(|s| exact_probability(s).expect("literal"))
            .collect(),
    };
    setting.to_file()
}

/// Writes the gadget plus `count` random settings (|T| ≤ 12) to `dir`.
/// Returns the file names.
pub fn generate_corpus(dir: &Path, count: usize, seed: u64) -> Result<Vec<String>, HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut files = vec![("000-gadget".to_string(), gadget())];
    for i in 0..count {
        let kind = [SettingKind::Partition, SettingKind::Graphic, SettingKind::Mixed][i % 3];
        let m = rng.gen_range(12..=24);
        let setting = random_setting(&mut rng, kind, 2, m, 12);
        let tag = match kind {
            SettingKind::Partition => "partition",
            SettingKind::Graphic => "graphic",
            SettingKind::Mixed => "mixed",
        };
        files.push((format!("{:03}-{tag}", i + 1), setting.to_file()));
    }
    let mut names = Vec::new();
    for (name, file) in files {
        let path = dir.join(format!("{name}.{CORPUS_EXT}"));
        std::fs::write(&path, format::write(&file)).map_err(|e| io_err(&path, e))?;
        names.push(name);
    }
    Ok(names)
}
