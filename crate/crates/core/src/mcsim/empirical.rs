use super::realization::Sampler;
use super::{run_chunks, McSettings};
use crate::channel::{LinkSet, Ue};
use crate::error::{domain, Result};
use crate::gof::{wilson_interval, Z_95};
use crate::outage::{CurvePoint, Mode, OutageCurve, Source, Strategy};
use crate::units::db_to_linear;
use crate::Real;

const MIN_SAMPLES: u64 = 10_000;

/// Empirical outage frequencies of one UE with pointwise 95% Wilson intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCurve<T> {
    pub strategy: Strategy,
    pub ue: Ue,
    pub mode: Mode,
    pub thresholds_db: Vec<T>,
    pub p_hat: Vec<T>,
    pub ci_low: Vec<T>,
    pub ci_high: Vec<T>,
    pub n_samples: u64,
    pub seed: u64,
}

impl<T: Real> From<EmpiricalCurve<T>> for OutageCurve<T> {
    fn from(c: EmpiricalCurve<T>) -> Self {
        let points = (0..c.thresholds_db.len())
            .map(|i| CurvePoint {
                threshold_db: c.thresholds_db[i],
                p_out: c.p_hat[i],
                interval: Some((c.ci_low[i], c.ci_high[i])),
            })
            .collect();
        OutageCurve {
            strategy: c.strategy,
            ue: c.ue,
            mode: c.mode,
            source: Source::Empirical {
                n_samples: c.n_samples,
                seed: c.seed,
            },
            points,
        }
    }
}

/// Outage curves for several transmit powers and modes from one set of
/// realizations, plus the sample moments of the channel powers.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageSweep<T> {
    pub tx_powers: Vec<[T; 2]>,
    pub modes: Vec<Mode>,
    /// Sample mean and mean square of `Z` per UE.
    pub sample_moments: [(T, T); 2],
    curves: Vec<[EmpiricalCurve<T>; 2]>,
}

impl<T: Real> OutageSweep<T> {
    /// Curves for the `power`-th transmit power pair under `mode`.
    pub fn curves(&self, power: usize, mode: Mode) -> Option<&[EmpiricalCurve<T>; 2]> {
        let m = self.modes.iter().position(|&x| x == mode)?;
        self.curves.get(power * self.modes.len() + m)
    }
}

/// The value of `γ` such that the UE is in outage exactly when `γ ≤ ε`.
#[inline]
fn critical_ratio<T: Real>(mode: Mode, z: [T; 2], p: [T; 2], p_noise: T, ue: usize) -> T {
    let j = 1 - ue;
    let sinr = |i: usize| p[i] * z[i] / (p[1 - i] * z[1 - i] + p_noise);
    let snr = p[ue] * z[ue] / p_noise;
    match mode {
        Mode::NoIc => sinr(ue),
        Mode::SnrOnly => snr,
        // decoded directly, or after cancelling the other UE's decoded signal
        Mode::Ic => sinr(ue).max(sinr(j).min(snr)),
    }
}

/// Simulated outage curves of both UEs for the transmit powers in `links`.
pub fn empirical_outage<T: Real>(
    links: &LinkSet<T>,
    strategy: Strategy,
    thresholds_db: &[T],
    mode: Mode,
    settings: &McSettings,
) -> Result<[EmpiricalCurve<T>; 2]> {
    let p = [links.ue(Ue::One).p_tx, links.ue(Ue::Two).p_tx];
    let sweep = empirical_outage_sweep(links, strategy, thresholds_db, &[p], &[mode], settings)?;
    Ok(sweep.curves.into_iter().next().expect("one curve pair"))
}

/// Simulated outage curves for every transmit-power pair (watts) and mode,
/// sharing one set of channel realizations.
pub fn empirical_outage_sweep<T: Real>(
    links: &LinkSet<T>,
    strategy: Strategy,
    thresholds_db: &[T],
    tx_powers: &[[T; 2]],
    modes: &[Mode],
    settings: &McSettings,
) -> Result<OutageSweep<T>> {
    settings.require_samples(MIN_SAMPLES, "empirical outage")?;
    if thresholds_db.is_empty() || tx_powers.is_empty() || modes.is_empty() {
        return Err(domain("empirical_outage", "empty threshold, power or mode list"));
    }
    if thresholds_db.iter().any(|t| t.is_nan()) {
        return Err(domain("empirical_outage", "NaN threshold"));
    }
    for p in tx_powers.iter().flatten() {
        if !(*p > T::zero() && p.is_finite()) {
            return Err(domain("empirical_outage", format!("transmit power {p}")));
        }
    }
    let mut order: Vec<usize> = (0..thresholds_db.len()).collect();
    order.sort_by(|&a, &b| thresholds_db[a].partial_cmp(&thresholds_db[b]).expect("no NaN"));
    let eps: Vec<T> = order.iter().map(|&i| db_to_linear(thresholds_db[i])).collect();
    let n_thr = eps.len();
    let n_curves = tx_powers.len() * modes.len() * 2;
    let p_noise = links.p_noise();
    // fail here rather than inside a worker
    Sampler::new(links, strategy)?;

    let partials = run_chunks(settings, |mut stream, len| {
        let mut sampler = Sampler::new(links, strategy).expect("validated above");
        let mut buckets = vec![0u64; n_curves * (n_thr + 1)];
        let mut sums = [T::zero(); 4];
        for _ in 0..len {
            let z = sampler.next(&mut stream).z;
            for ue in 0..2 {
                sums[2 * ue] = sums[2 * ue] + z[ue];
                sums[2 * ue + 1] = sums[2 * ue + 1] + z[ue] * z[ue];
            }
            let mut c = 0;
            for p in tx_powers {
                for &mode in modes {
                    for ue in 0..2 {
                        let gamma = critical_ratio(mode, z, *p, p_noise, ue);
                        let idx = eps.partition_point(|&e| e < gamma);
                        buckets[c * (n_thr + 1) + idx] += 1;
                        c += 1;
                    }
                }
            }
        }
        (buckets, sums)
    })?;

    let mut buckets = vec![0u64; n_curves * (n_thr + 1)];
    let mut sums = [T::zero(); 4];
    for (b, s) in partials {
        for (acc, x) in buckets.iter_mut().zip(b) {
            *acc += x;
        }
        for (acc, x) in sums.iter_mut().zip(s) {
            *acc = *acc + x;
        }
    }

    let n = settings.n_samples;
    let n_t = T::lit(n as f64);
    let mut curves = Vec::with_capacity(n_curves / 2);
    let mut c = 0;
    for _ in tx_powers {
        for &mode in modes {
            let mut pair = Vec::with_capacity(2);
            for ue in Ue::BOTH {
                let b = &buckets[c * (n_thr + 1)..(c + 1) * (n_thr + 1)];
                // outages at sorted threshold t: realizations with bucket index <= t
                let mut hits_sorted = Vec::with_capacity(n_thr);
                let mut acc = 0u64;
                for &x in &b[..n_thr] {
                    acc += x;
                    hits_sorted.push(acc);
                }
                let mut hits = vec![0u64; n_thr];
                for (s, &i) in order.iter().enumerate() {
                    hits[i] = hits_sorted[s];
                }
                let intervals: Vec<(T, T)> = hits.iter().map(|&h| wilson_interval(h, n, T::lit(Z_95))).collect();
                pair.push(EmpiricalCurve {
                    strategy,
                    ue,
                    mode,
                    thresholds_db: thresholds_db.to_vec(),
                    p_hat: hits.iter().map(|&h| T::lit(h as f64) / n_t).collect(),
                    ci_low: intervals.iter().map(|i| i.0).collect(),
                    ci_high: intervals.iter().map(|i| i.1).collect(),
                    n_samples: n,
                    seed: settings.seed,
                });
                c += 1;
            }
            let [a, b]: [EmpiricalCurve<T>; 2] = pair.try_into().expect("two UEs");
            curves.push([a, b]);
        }
    }
    let moment = |ue: usize| (sums[2 * ue] / n_t, sums[2 * ue + 1] / n_t);
    Ok(OutageSweep {
        tx_powers: tx_powers.to_vec(),
        modes: modes.to_vec(),
        sample_moments: [moment(0), moment(1)],
        curves,
    })
}

/// Channel powers `Z` of every realization, per UE, in draw order.
pub fn channel_power_samples<T: Real>(
    links: &LinkSet<T>,
    strategy: Strategy,
    settings: &McSettings,
) -> Result<[Vec<T>; 2]> {
    Sampler::new(links, strategy)?;
    let chunks = run_chunks(settings, |mut stream, len| {
        let mut sampler = Sampler::new(links, strategy).expect("validated above");
        let mut z = [Vec::with_capacity(len as usize), Vec::with_capacity(len as usize)];
        for _ in 0..len {
            let r = sampler.next(&mut stream);
            z[0].push(r.z[0]);
            z[1].push(r.z[1]);
        }
        z
    })?;
    let mut out = [Vec::new(), Vec::new()];
    for [a, b] in chunks {
        out[0].extend(a);
        out[1].extend(b);
    }
    Ok(out)
}
