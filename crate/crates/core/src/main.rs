use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use irs_noma::cli::{run, Command};
use irs_noma::config::{load_config, ScenarioConfig};

/// Outage analysis of IRS-assisted two-user uplink NOMA.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Scenario file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Monte-Carlo seed.
    #[arg(long)]
    seed: Option<String>,
    /// Monte-Carlo realizations, e.g. 1e6.
    #[arg(long)]
    samples: Option<String>,
    /// noic, ic, snr or all
    #[arg(long)]
    mode: Option<String>,
    /// boost-ue1, boost-ue2, no-irs or all
    #[arg(long)]
    strategy: Option<String>,
    /// Monte-Carlo worker threads; 0 picks the core count.
    #[arg(long)]
    workers: Option<String>,
}

fn config(args: &Args) -> irs_noma::Result<ScenarioConfig> {
    let mut cfg = match &args.config {
        Some(path) => load_config(path)?,
        None => ScenarioConfig::default(),
    };
    let overrides = [
        ("seed", &args.seed),
        ("samples", &args.samples),
        ("mode", &args.mode),
        ("strategy", &args.strategy),
        ("workers", &args.workers),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    match config(&args).and_then(|cfg| run(args.command, &cfg, &args.out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
