//! Analytical outage probabilities of the two-UE uplink.
//!
//! * SNR outage: P{Z P / P_w ≤ ε}, the Gamma CDF of the received power.
//! * SINR outage without interference cancellation: the received power of the
//!   interferer plus noise is re-matched to a Gamma law and the ratio of the
//!   two Gamma variables is beta-prime distributed.
//! * Outage under parallel interference cancellation: a UE succeeds either
//!   directly, or after the other UE was decoded and cancelled, and never
//!   does better than the noise-only bound.

use log::warn;

use crate::channel::{received_power_gamma, CombiningRole, LinkSet, Ue};
use crate::error::{domain, Result};
use crate::specfun::{reg_inc_beta_pair, reg_inc_gamma_lower, Probability};
use crate::stochastic::GammaParams;
use crate::units::db_to_linear;
use crate::Real;

/// Received power Z·P of one UE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UePowerStats<T> {
    Received(GammaParams<T>),
    /// The UE contributes no power at the BS.
    Silent,
}

impl<T: Real> UePowerStats<T> {
    pub fn gamma(&self) -> Option<&GammaParams<T>> {
        match self {
            UePowerStats::Received(g) => Some(g),
            UePowerStats::Silent => None,
        }
    }
}

/// Outage threshold ε (linear) and noise power P_w (watts).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageQuery<T> {
    epsilon: T,
    p_noise: T,
}

impl<T: Real> OutageQuery<T> {
    pub fn new(epsilon: T, p_noise: T) -> Result<Self> {
        if !(epsilon >= T::zero()) {
            return Err(domain("OutageQuery", format!("epsilon = {epsilon}, need epsilon >= 0")));
        }
        if !(p_noise > T::zero()) || !p_noise.is_finite() {
            return Err(domain("OutageQuery", format!("p_noise = {p_noise}, need p_noise > 0")));
        }
        Ok(Self { epsilon, p_noise })
    }

    pub fn from_db(epsilon_db: T, p_noise: T) -> Result<Self> {
        Self::new(db_to_linear(epsilon_db), p_noise)
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn p_noise(&self) -> T {
        self.p_noise
    }
}

/// P{Z_i P_i / P_w ≤ ε} = P(k_i, ε P_w / θ_i), with θ_i already including P_i.
pub fn snr_outage<T: Real>(sig: &UePowerStats<T>, q: &OutageQuery<T>) -> Result<Probability<T>> {
    let Some(g) = sig.gamma() else {
        return Ok(Probability::one());
    };
    reg_inc_gamma_lower(g.k(), q.epsilon * q.p_noise / g.theta())
}

/// Gamma law with the mean and variance of interference plus noise,
/// Z_j P_j + P_w: k̂ = (kθ + P_w)² / (kθ²), θ̂ = kθ² / (kθ + P_w).
pub fn interference_plus_noise<T: Real>(intf: &GammaParams<T>, p_noise: T) -> Result<GammaParams<T>> {
    let mean = intf.mean() + p_noise;
    let variance = intf.variance();
    GammaParams::new(mean * mean / variance, variance / mean)
}

/// SINR outage P{Z_i P_i / (Z_j P_j + P_w) ≤ ε} without interference cancellation.
///
/// The ratio of the signal Gamma and the re-matched interference-plus-noise
/// Gamma has CDF I(εθ̂_j / (θ̂_i + εθ̂_j); k_i, k̂_j). The result is floored at
/// the SNR outage: removing interference can only help, but the re-matched law
/// puts mass below P_w and can dip under that bound when noise dominates.
/// A silent interferer reduces the query to the SNR outage.
pub fn noic_outage<T: Real>(
    sig_i: &UePowerStats<T>,
    intf_j: &UePowerStats<T>,
    q: &OutageQuery<T>,
) -> Result<Probability<T>> {
    let Some(signal) = sig_i.gamma() else {
        return Ok(Probability::one());
    };
    let snr = snr_outage(sig_i, q)?;
    let Some(intf) = intf_j.gamma() else {
        return Ok(snr);
    };
    if q.epsilon == T::zero() {
        return Ok(Probability::zero());
    }
    let denominator = interference_plus_noise(intf, q.p_noise)?;
    let ratio = if q.epsilon.is_infinite() {
        Probability::one()
    } else {
        let weighted = q.epsilon * denominator.theta();
        let total = signal.theta() + weighted;
        reg_inc_beta_pair(weighted / total, signal.theta() / total, signal.k(), denominator.k())?
    };
    Ok(if ratio.value() < snr.value() { snr } else { ratio })
}

/// Outage of UE i under parallel interference cancellation:
/// 1 − min(p_succ,i + p_succ,j · p_succ,SNR,i, p_succ,SNR,i).
///
/// The two detection paths are treated as independent, so this is an
/// approximation of the event probability.
pub fn ic_outage<T: Real>(
    sig_i: &UePowerStats<T>,
    sig_j: &UePowerStats<T>,
    q: &OutageQuery<T>,
) -> Result<Probability<T>> {
    // Written as p_noic,i − p_succ,j · p_succ,SNR,i so that tiny outages keep
    // their digits.
    let snr = snr_outage(sig_i, q)?;
    let noic_i = noic_outage(sig_i, sig_j, q)?.value();
    let succ_j = noic_outage(sig_j, sig_i, q)?.complement().value();
    let value = noic_i - succ_j * snr.complement().value();
    if value <= snr.value() {
        return Ok(snr);
    }
    let clamped = value.max(T::zero()).min(T::one());
    if (clamped - value).abs() > T::lit(1e-12) {
        warn!("ic_outage clamped {value:e} into [0, 1]");
    }
    Probability::new(clamped)
}

/// Which UE the IRS phases are aligned to, or no IRS at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    BoostUe1,
    BoostUe2,
    NoIrs,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::BoostUe1, Strategy::BoostUe2, Strategy::NoIrs];

    /// Combining role of `ue`; without an IRS there is nothing to combine and
    /// the role is irrelevant.
    pub fn role(self, ue: Ue) -> CombiningRole {
        match (self, ue) {
            (Strategy::BoostUe1, Ue::One) | (Strategy::BoostUe2, Ue::Two) => CombiningRole::Coherent,
            _ => CombiningRole::Random,
        }
    }

    pub fn boosted(self) -> Option<Ue> {
        match self {
            Strategy::BoostUe1 => Some(Ue::One),
            Strategy::BoostUe2 => Some(Ue::Two),
            Strategy::NoIrs => None,
        }
    }

    /// The links this strategy actually operates on.
    pub fn apply<T: Real>(self, links: &LinkSet<T>) -> LinkSet<T> {
        match self {
            Strategy::NoIrs => links.without_irs(),
            _ => links.clone(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::BoostUe1 => "boost-ue1",
            Strategy::BoostUe2 => "boost-ue2",
            Strategy::NoIrs => "no-irs",
        }
    }
}

/// Which outage event is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    NoIc,
    Ic,
    SnrOnly,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::NoIc, Mode::Ic, Mode::SnrOnly];

    pub fn name(self) -> &'static str {
        match self {
            Mode::NoIc => "noic",
            Mode::Ic => "ic",
            Mode::SnrOnly => "snr",
        }
    }
}

/// Where the points of a curve came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Analytic,
    Empirical { n_samples: u64, seed: u64 },
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Empirical { .. } => "empirical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    pub threshold_db: T,
    pub p_out: T,
    /// 95% confidence interval, empirical curves only.
    pub interval: Option<(T, T)>,
}

/// Outage probability of one UE over a threshold grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageCurve<T> {
    pub strategy: Strategy,
    pub ue: Ue,
    pub mode: Mode,
    pub source: Source,
    pub points: Vec<CurvePoint<T>>,
}

impl<T: Real> OutageCurve<T> {
    pub fn p_out(&self) -> impl Iterator<Item = T> + '_ {
        self.points.iter().map(|p| p.p_out)
    }
}

/// Received-power laws of both UEs under a strategy.
pub fn ue_power_stats<T: Real>(links: &LinkSet<T>, strategy: Strategy) -> Result<[UePowerStats<T>; 2]> {
    let links = strategy.apply(links);
    let stats = |ue: Ue| -> Result<UePowerStats<T>> {
        if !links.has_direct(ue) && !links.has_reflection(ue) {
            return Ok(UePowerStats::Silent);
        }
        Ok(UePowerStats::Received(received_power_gamma(
            &links,
            ue,
            strategy.role(ue),
        )?))
    };
    Ok([stats(Ue::One)?, stats(Ue::Two)?])
}

/// Evaluates one outage event for one UE.
pub fn outage<T: Real>(stats: &[UePowerStats<T>; 2], ue: Ue, mode: Mode, q: &OutageQuery<T>) -> Result<Probability<T>> {
    let own = &stats[ue.index()];
    let other = &stats[ue.other().index()];
    match mode {
        Mode::NoIc => noic_outage(own, other, q),
        Mode::Ic => ic_outage(own, other, q),
        Mode::SnrOnly => snr_outage(own, q),
    }
}

/// Analytic outage curves of both UEs over thresholds given in dB.
///
/// The Gamma laws do not depend on ε and are built once per call.
pub fn outage_curve<T: Real>(
    links: &LinkSet<T>,
    strategy: Strategy,
    thresholds_db: &[T],
    mode: Mode,
) -> Result<[OutageCurve<T>; 2]> {
    if thresholds_db.is_empty() {
        return Err(domain("outage_curve", "empty threshold list"));
    }
    let stats = ue_power_stats(links, strategy)?;
    let curve = |ue: Ue| -> Result<OutageCurve<T>> {
        let points = thresholds_db
            .iter()
            .map(|&threshold_db| {
                let q = OutageQuery::from_db(threshold_db, links.p_noise())?;
                Ok(CurvePoint {
                    threshold_db,
                    p_out: outage(&stats, ue, mode, &q)?.value(),
                    interval: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OutageCurve {
            strategy,
            ue,
            mode,
            source: Source::Analytic,
            points,
        })
    };
    Ok([curve(Ue::One)?, curve(Ue::Two)?])
}

/// Thresholds `start, start + step, …` up to and including `stop`.
pub fn threshold_grid<T: Real>(start_db: T, stop_db: T, step_db: T) -> Result<Vec<T>> {
    if !(step_db > T::zero()) || !(stop_db >= start_db) || !start_db.is_finite() || !stop_db.is_finite() {
        return Err(domain(
            "threshold_grid",
            format!("start = {start_db}, stop = {stop_db}, step = {step_db}"),
        ));
    }
    let count = ((stop_db - start_db) / step_db + T::lit(1e-9))
        .floor()
        .to_usize()
        .unwrap_or(0);
    Ok((0..=count).map(|i| start_db + T::count(i) * step_db).collect())
}
