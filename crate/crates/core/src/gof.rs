//! Confidence intervals and goodness-of-fit statistics for the Monte-Carlo
//! comparisons.

use crate::Real;

/// Two-sided 97.5% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `hits` out of `n` Bernoulli trials at the
/// confidence level implied by `z`.
pub fn wilson_interval<T: Real>(hits: u64, n: u64, z: T) -> (T, T) {
    let n_t = T::lit(n as f64);
    let p = T::lit(hits as f64) / n_t;
    let z2 = z * z;
    let four = T::lit(4.0);
    let denom = T::one() + z2 / n_t;
    let center = (p + z2 / (T::lit(2.0) * n_t)) / denom;
    let half = z / denom * (p * (T::one() - p) / n_t + z2 / (four * n_t * n_t)).sqrt();
    let low = (center - half).min(p).max(T::zero());
    let high = (center + half).max(p).min(T::one());
    (low, high)
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `sorted` samples
/// and a continuous CDF.
pub fn ks_statistic<T: Real>(sorted: &[T], cdf: impl Fn(T) -> T) -> T {
    let n = T::count(sorted.len());
    sorted.iter().enumerate().fold(T::zero(), |d, (i, &x)| {
        let f = cdf(x);
        let below = f - T::count(i) / n;
        let above = T::count(i + 1) / n - f;
        d.max(below).max(above)
    })
}

/// Dvoretzky–Kiefer–Wolfowitz half-width: the empirical CDF of `n` samples
/// stays within this distance of the true CDF with probability 1 − `alpha`.
pub fn dkw_epsilon<T: Real>(n: usize, alpha: T) -> T {
    ((T::lit(2.0) / alpha).ln() / (T::lit(2.0) * T::count(n))).sqrt()
}
