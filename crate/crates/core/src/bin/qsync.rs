use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qsync::experiments::{execute, render_csv, Experiment, ExperimentConfig};

/// Run a synchronization experiment and write its CSV.
#[derive(Parser)]
#[command(name = "qsync", version)]
struct Cli {
    /// pair-trace | sweep-mu | sweep-nb | chain | ou-check
    experiment: String,
    /// TOML file with [params], [integrator], [sweep], [chain] and [ou] sections.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config entry, e.g. `--set params.mu=0.01`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output CSV; defaults to `out` from the config, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("qsync: {failed} sweep point(s) failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qsync: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> qsync::Result<usize> {
    let experiment: Experiment = cli.experiment.parse()?;
    let mut sets = vec![format!("experiment=\"{experiment}\"")];
    sets.extend(cli.set);
    let mut cfg = ExperimentConfig::load(cli.config.as_deref(), &sets)?;
    if cli.out.is_some() {
        cfg.out = cli.out;
    }
    let outcome = execute(&cfg)?;
    let csv = render_csv(&cfg, &outcome);
    match &cfg.out {
        Some(path) => std::fs::write(path, csv).map_err(|source| qsync::Error::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{csv}"),
    }
    Ok(outcome.failed_points())
}
