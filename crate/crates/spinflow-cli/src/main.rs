//! Batch experiment driver: declarative JSON job configs, one subcommand
//! per invocation, deterministic CSV/JSON outputs.

mod config;
mod output;
mod run;

use clap::Parser;
use config::{apply_overrides, JobConfig};
use output::{error_record, run_record, write_error, OutputDir};
use run::CliError;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "spinflow",
    version,
    about = "Gapped-phase experiments on quantum spin chains and stabilizer surfaces",
    after_help = "Subcommands: gap-scan, splitting, lr-cone, flow, flow-identity, locality, \
                  decompose, symmetry, entropy-scan, topo-degeneracy, topo-entropy.\n\
                  Precedence: --override > --out > config file > built-in defaults.\n\
                  SPINFLOW_THREADS limits the intra-job parallelism degree."
)]
struct Cli {
    /// Experiment family to run.
    subcommand: String,
    /// JSON job config; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config's `out`).
    #[arg(long)]
    out: Option<String>,
    /// Dotted-path config overrides, e.g. --override model.name=xy
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn load_config(cli: &Cli) -> Result<JobConfig, CliError> {
    let mut doc = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("config {path:?}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("config {path:?}: {e}")))?
        }
        None => serde_json::json!({}),
    };
    doc = apply_overrides(doc, &cli.overrides)?;
    let mut cfg: JobConfig = serde_json::from_value(doc)
        .map_err(|e| CliError::Validation(format!("config: {e}")))?;
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if let Some(sub) = &cfg.subcommand {
        if sub != &cli.subcommand {
            return Err(CliError::Validation(format!(
                "config subcommand '{sub}' does not match CLI subcommand '{}'",
                cli.subcommand
            )));
        }
    }
    cfg.subcommand = Some(cli.subcommand.clone());
    Ok(cfg)
}

fn main() {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("SPINFLOW_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let started = Instant::now();
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            let record = error_record(e.exit_code(), e.kind(), &e.message());
            eprintln!("{}", serde_json::to_string(&record).unwrap());
            write_error(std::path::Path::new("."), &record);
            std::process::exit(e.exit_code());
        }
    };
    let out = match OutputDir::create(&cfg.out) {
        Ok(o) => o,
        Err(e) => {
            let record = error_record(2, "io", &e.to_string());
            eprintln!("{}", serde_json::to_string(&record).unwrap());
            std::process::exit(2);
        }
    };
    match run::run(&cli.subcommand, &cfg, &out) {
        Ok(()) => {
            let echo = serde_json::to_value(&cfg).expect("config echo");
            let record = run_record(echo, started.elapsed().as_secs_f64());
            if let Err(e) = out.write_json("run.json", &record) {
                eprintln!("failed to write run.json: {e}");
                std::process::exit(2);
            }
        }
        Err(e) => {
            let record = error_record(e.exit_code(), e.kind(), &e.message());
            eprintln!("{}", serde_json::to_string(&record).unwrap());
            write_error(&out.path(""), &record);
            std::process::exit(e.exit_code());
        }
    }
}
