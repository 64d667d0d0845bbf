//! Monte-Carlo reference simulator.
//!
//! Draws the raw fading coefficients of every link, configures the IRS
//! phases for the boosted UE and evaluates the exact channel powers, outage
//! events and sums whose laws the analysis approximates. Work is split into
//! chunks of [`CHUNK_SIZE`] realizations; chunk `c` draws from substream
//! `(seed, c)` and partial results are merged in chunk order, so output does
//! not depend on the number of workers.

mod density;
mod empirical;
mod realization;

pub use density::{density_samples, empirical_density, ApproxLaw, DensityQuantity, Histogram};
pub use empirical::{channel_power_samples, empirical_outage, empirical_outage_sweep, EmpiricalCurve, OutageSweep};
pub use realization::{sample_realization, ChannelDraw, Realization};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::stochastic::RngStream;

pub const CHUNK_SIZE: u64 = 1 << 16;

/// Sample budget, seed and parallelism of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSettings {
    pub n_samples: u64,
    pub seed: u64,
    /// Worker threads; 0 lets the thread pool decide. Results do not depend on it.
    pub workers: usize,
}

impl McSettings {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        Self {
            n_samples,
            seed,
            workers: 0,
        }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self { workers, ..self }
    }

    fn require_samples(&self, min: u64, what: &str) -> Result<()> {
        if self.n_samples < min {
            return Err(Error::Config(format!(
                "{what} needs at least {min} samples, got {}",
                self.n_samples
            )));
        }
        Ok(())
    }
}

/// Runs `work(stream, len)` for every chunk and returns results in chunk order.
fn run_chunks<R, F>(settings: &McSettings, work: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(RngStream, u64) -> R + Sync,
{
    let n_chunks = settings.n_samples.div_ceil(CHUNK_SIZE);
    let chunk = |c: u64| {
        let len = CHUNK_SIZE.min(settings.n_samples - c * CHUNK_SIZE);
        work(RngStream::substream(settings.seed, c), len)
    };
    if settings.workers == 1 {
        return Ok((0..n_chunks).map(chunk).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..n_chunks).into_par_iter().map(chunk).collect()))
}
