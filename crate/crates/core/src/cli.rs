//! Subcommands of the `irs-noma` binary.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::config::ScenarioConfig;
use crate::csv::{write_compare_csv, write_density_csv, write_outage_csv};
use crate::error::{Error, Result};
use crate::mcsim::{empirical_density, empirical_outage_sweep};
use crate::outage::{outage_curve, OutageCurve};
use crate::Ue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Closed-form outage curves.
    Analyze,
    /// Monte-Carlo outage curves with 95% intervals.
    Simulate,
    /// Both, joined per threshold, with their gaps.
    Compare,
    /// Histograms of the reflected sums against their approximating laws.
    Density,
}

fn io_error(path: &Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io(format!("{}: {e}", path.display()))
}

fn analytic_curves(cfg: &ScenarioConfig) -> Result<Vec<OutageCurve<f64>>> {
    let links = cfg.links()?;
    let thresholds = cfg.thresholds_db()?;
    let mut out = Vec::new();
    for &strategy in &cfg.strategies {
        for &mode in &cfg.modes {
            out.extend(outage_curve(&links, strategy, &thresholds, mode)?);
        }
    }
    Ok(out)
}

fn empirical_curves(cfg: &ScenarioConfig) -> Result<Vec<OutageCurve<f64>>> {
    let links = cfg.links()?;
    let thresholds = cfg.thresholds_db()?;
    let p = [links.ue(Ue::One).p_tx, links.ue(Ue::Two).p_tx];
    let mut out = Vec::new();
    for &strategy in &cfg.strategies {
        log::info!("simulating {} with {} samples", strategy.name(), cfg.samples);
        let sweep = empirical_outage_sweep(&links, strategy, &thresholds, &[p], &cfg.modes, &cfg.mc_settings())?;
        for &mode in &cfg.modes {
            let pair = sweep.curves(0, mode).expect("mode was simulated");
            out.extend(pair.iter().cloned().map(OutageCurve::from));
        }
    }
    Ok(out)
}

/// Runs `command` on `cfg` and writes its CSV to `out`.
pub fn run(command: Command, cfg: &ScenarioConfig, out: &Path) -> Result<()> {
    let file = File::create(out).map_err(io_error(out))?;
    let mut w = BufWriter::new(file);
    match command {
        Command::Analyze => write_outage_csv(&mut w, &analytic_curves(cfg)?).map_err(io_error(out))?,
        Command::Simulate => write_outage_csv(&mut w, &empirical_curves(cfg)?).map_err(io_error(out))?,
        Command::Compare => {
            let pairs: Vec<_> = analytic_curves(cfg)?.into_iter().zip(empirical_curves(cfg)?).collect();
            write_compare_csv(&mut w, &pairs)?;
        }
        Command::Density => {
            let ue = cfg.density_ue.index();
            let mut sections = Vec::new();
            for &q in &cfg.density {
                let hist = empirical_density(q, cfg.n_elements, cfg.m_bs, cfg.m_g[ue], cfg.bins, &cfg.mc_settings())?;
                let law = q.approximation(cfg.n_elements, cfg.m_bs, cfg.m_g[ue])?;
                sections.push((q, hist, law));
            }
            write_density_csv(&mut w, &sections).map_err(io_error(out))?;
        }
    }
    w.flush().map_err(io_error(out))
}
