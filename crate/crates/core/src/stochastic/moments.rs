use super::{GammaParams, NakagamiParams, PowerMoments};
use crate::error::{domain, Error, Result};
use crate::specfun::ln_gamma_ratio;
use crate::Real;

/// Relative variance floor below which a Gamma fit is a spike.
const DEGENERATE_VARIANCE: f64 = 1e-30;

fn check_order(function: &'static str, p: u32) -> Result<()> {
    if (1..=4).contains(&p) {
        Ok(())
    } else {
        Err(domain(function, format!("order p = {p}, need 1 <= p <= 4")))
    }
}

/// E{|H|ᵖ} = Γ(m + p/2) / (Γ(m) (m/Ω)^(p/2)) for H ~ Nakagami(m, Ω).
///
/// Even orders are the finite products ∏ Ω (m + q)/m, so E{|H|²} = Ω exactly;
/// odd orders go through the log-gamma ratio.
pub fn nakagami_raw_moment<T: Real>(params: &NakagamiParams<T>, p: u32) -> Result<T> {
    check_order("nakagami_raw_moment", p)?;
    let (m, omega) = (params.m(), params.omega());
    if p.is_multiple_of(2) {
        return Ok((0..p / 2).fold(T::one(), |acc, q| acc * ((m + T::lit(f64::from(q))) / m * omega)));
    }
    let half_p = T::lit(f64::from(p) / 2.0);
    Ok((ln_gamma_ratio(m, half_p)? + half_p * omega.ln()).exp())
}

/// E{Xᵖ} = Γ(k + p) θᵖ / Γ(k) = ∏_{q<p} (k + q) θ for X ~ Γ(k, θ).
///
/// Each factor is of the size of the mean, so no Gamma function is formed and
/// nothing overflows unless the moment itself does.
pub fn gamma_raw_moment<T: Real>(params: &GammaParams<T>, p: u32) -> Result<T> {
    check_order("gamma_raw_moment", p)?;
    let (k, theta) = (params.k(), params.theta());
    Ok((0..p).fold(T::one(), |acc, q| acc * ((k + T::lit(f64::from(q))) * theta)))
}

/// Gamma law sharing the first two raw moments:
/// k = μ² / (μ⁽²⁾ − μ²), θ = (μ⁽²⁾ − μ²) / μ.
pub fn match_gamma<T: Real>(moments: &PowerMoments<T>) -> Result<GammaParams<T>> {
    let mu = moments.mu;
    let variance = moments.variance();
    if !(variance > T::lit(DEGENERATE_VARIANCE) * mu * mu) {
        return Err(Error::DegenerateVariance {
            mu: mu.as_f64(),
            mu2: moments.mu2.as_f64(),
        });
    }
    GammaParams::new(mu * mu / variance, variance / mu)
}

/// c·X ~ Γ(k, cθ) when X ~ Γ(k, θ).
pub fn scale_gamma<T: Real>(params: &GammaParams<T>, c: T) -> Result<GammaParams<T>> {
    if !(c > T::zero()) || !c.is_finite() {
        return Err(domain("scale_gamma", format!("c = {c}, need c > 0")));
    }
    GammaParams::new(params.k(), c * params.theta())
}
