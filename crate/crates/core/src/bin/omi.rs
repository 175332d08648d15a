use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use omi::harness::{
    bench_linear_calls, estimate_gf_curve, generate_corpus, hastiness_report, load_corpus, run_trials, sized_spec,
    verify_lemmas, write_csv, write_lemma_csv, Algorithm, ExperimentConfig, HarnessError,
};
use omi::instances::{generate, InstanceSpec};
use omi::matroid::format::{self, MatroidFile};

#[derive(Parser)]
#[command(name = "omi", version, about = "Random-order matroid intersection experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the trials of a TOML experiment config and emit CSV.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Add a wall-clock column (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Greedy prefix curve G(f), optionally with the hastiness check.
    GfCurve {
        #[arg(long, default_value = "balanced_thick_z")]
        family: String,
        /// Target ground-set size.
        #[arg(long, default_value_t = 10_200)]
        size: usize,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.07, 0.1, 0.25, 0.5, 1.0])]
        grid: Vec<f64>,
        /// Compare against the hastiness bound and report span overlaps.
        #[arg(long)]
        hastiness: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the sampling bound on every instance of a corpus directory.
    VerifyLemmas {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 1000)]
        mc_samples: u64,
        #[arg(long, default_value_t = 16)]
        invariant_tapes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Oracle calls per element across sizes.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1000, 10_000, 100_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value = "marking-greedy")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 3)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one generated instance to a file.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
    },
    /// Write a fresh sampling-bound corpus.
    GenCorpus {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 210)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Graph text for graph families, matroid text otherwise.
    Auto,
    Graph,
    Matroid,
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, HarnessError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_err(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(p: &Path, e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    }
}

fn write_all(out: &mut dyn Write, text: &str) -> Result<(), HarnessError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| io_err(Path::new("<output>"), e))
}

fn gf_curve(
    family: &str,
    size: usize,
    trials: u64,
    seed: u64,
    grid: &[f64],
    hastiness: bool,
    out: &Option<PathBuf>,
) -> Result<(), HarnessError> {
    let spec = sized_spec(family, size, seed)?;
    let instance = generate(&spec)?;
    let mut text = String::from("# omi-gf v1\n");
    if hastiness {
        let (eps, rows) = hastiness_report(&instance, trials, seed, grid)?;
        text.push_str(&format!("# epsilon={eps:.6}\n"));
        text.push_str("f,g,std_err,bound,holds,phi_intersection,phi_intersection_bound,phi_union,phi_union_bound,phi_holds\n");
        for r in rows {
            let phi = r.phi.map_or(",,,,".to_string(), |p| {
                format!(
                    "{:.6},{:.6},{:.6},{:.6},{}",
                    p.intersection,
                    p.intersection_bound,
                    p.union,
                    p.union_bound,
                    p.holds()
                )
            });
            text.push_str(&format!("{},{:.6},{:.6},{:.6},{},{phi}\n", r.f, r.g, r.std_err, r.bound, r.holds));
        }
    } else {
        text.push_str("f,g,std_err\n");
        for p in estimate_gf_curve(&instance, trials, seed, grid)? {
            text.push_str(&format!("{},{:.6},{:.6}\n", p.f, p.mean, p.std_err));
        }
    }
    write_all(&mut *sink(out)?, &text)
}

fn gen(family: &str, out: &Path, size: usize, seed: u64, fmt: Format) -> Result<(), HarnessError> {
    let spec: InstanceSpec = sized_spec(family, size, seed)?;
    let instance = generate(&spec)?;
    let text = match (fmt, &instance.graph) {
        (Format::Auto | Format::Graph, Some(g)) => g.to_text(),
        (Format::Graph, None) => {
            return Err(HarnessError::Config(format!("{family} has no graph form")));
        }
        (_, _) => {
            if instance.matroids.is_empty() {
                return Err(HarnessError::Config(format!("{family} has no matroid form")));
            }
            let mut file = MatroidFile {
                matroids: instance.matroids.clone(),
                ..Default::default()
            };
            file.attributes.insert("family".into(), vec![spec.family.name().into()]);
            file.attributes.insert("seed".into(), vec![seed.to_string()]);
            format::write(&file)
        }
    };
    std::fs::write(out, text).map_err(|e| io_err(out, e))
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Run {
            config,
            out,
            trials,
            threads,
            timing,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if threads.is_some() {
                cfg.threads = threads;
            }
            cfg.timing |= timing;
            let set = run_trials(&cfg)?;
            let target = out.or_else(|| cfg.out.clone());
            write_csv(&set, sink(&target)?)?;
            Ok(true)
        }
        Command::GfCurve {
            family,
            size,
            trials,
            seed,
            grid,
            hastiness,
            out,
        } => {
            gf_curve(&family, size, trials, seed, &grid, hastiness, &out)?;
            Ok(true)
        }
        Command::VerifyLemmas {
            corpus,
            mc_samples,
            invariant_tapes,
            seed,
            out,
        } => {
            let entries = load_corpus(&corpus)?;
            let (rows, summary) = verify_lemmas(&entries, mc_samples, invariant_tapes, seed)?;
            write_lemma_csv(&rows, &summary, sink(&out)?)?;
            eprintln!(
                "{} instances, {} exact checks ({} violated), {} Monte-Carlo checks ({} below 3σ), {} invariant replays",
                summary.instances,
                summary.exact_checks,
                summary.exact_violations,
                summary.mc_checks,
                summary.mc_alarms,
                summary.invariant_replays
            );
            Ok(summary.all_hold())
        }
        Command::Bench {
            family,
            sizes,
            algorithm,
            trials,
            seed,
            out,
        } => {
            let r = bench_linear_calls(algorithm, &family, &sizes, trials, seed)?;
            let mut text = format!("# omi-bench v1\n# algorithm={} family={}\nm,mean_calls,calls_per_element\n", r.algorithm, r.family);
            for row in &r.rows {
                text.push_str(&format!("{},{:.3},{:.6}\n", row.m, row.mean_calls, row.calls_per_element));
            }
            text.push_str(&format!(
                "# slope={:.6}\n# r_squared={:.6}\n# growth={:.6}\n# superlinear={}\n",
                r.slope, r.r_squared, r.growth, r.superlinear
            ));
            write_all(&mut *sink(&out)?, &text)?;
            Ok(!r.superlinear)
        }
        Command::Gen {
            family,
            out,
            size,
            seed,
            format,
        } => {
            gen(&family, &out, size, seed, format)?;
            Ok(true)
        }
        Command::GenCorpus { out, count, seed } => {
            let names = generate_corpus(&out, count, seed)?;
            eprintln!("wrote {} files to {}", names.len(), out.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
