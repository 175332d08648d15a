//! An experiment described in TOML, run in parallel and written as CSV.

use omi::harness::{run_trials, write_csv, ExperimentConfig};

const CONFIG: &str = r#"
algorithm = "combined"
trials = 8
threads = 2

[instance]
family = "random_graphic_pair"
m = 200
vertices = 60
seed = 9

[params]
r = 0.5

[seeds]
order = 21
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::from_toml(CONFIG)?;
    let set = run_trials(&cfg)?;
    write_csv(&set, std::io::stdout().lock())?;
    eprintln!("normalised config:\n{}", cfg.to_toml());
    Ok(())
}
