//! Special functions behind the outage formulas.
//!
//! | Function | Value |
//! |----------|-------|
//! | [`ln_gamma`] | ln Γ(x) |
//! | [`ln_gamma_ratio`] | ln[Γ(x + a) / (Γ(x) xᵃ)] |
//! | [`ln_beta`] | ln B(a, b) |
//! | [`reg_inc_gamma_lower`] | P(k, x) = γ(k, x) / Γ(k), the CDF of Γ(k, 1) |
//! | [`reg_inc_beta`] | I(x; a, b), the CDF of Beta(a, b) |
//!
//! Everything is generic over [`Real`](crate::Real), pure and reentrant.
//! Accuracy targets are stated for `f64`; `f32` instantiations converge to
//! single precision.

mod incbeta;
mod incgamma;
mod lngamma;
mod probability;

pub use incbeta::reg_inc_beta;
pub(crate) use incbeta::reg_inc_beta_pair;
pub use incgamma::reg_inc_gamma_lower;
pub use lngamma::{ln_beta, ln_gamma, ln_gamma_ratio};
pub use probability::Probability;

use crate::Real;

/// Iteration cap shared by the continued fractions.
pub(crate) const CF_MAX_ITER: usize = 500;

/// Relative convergence tolerance, never finer than the scalar resolution.
#[inline]
pub(crate) fn convergence_tol<T: Real>() -> T {
    T::lit(1e-14).max(T::epsilon())
}

/// Lentz floor against zero denominators.
#[inline]
pub(crate) fn tiny<T: Real>() -> T {
    T::min_positive_value() / T::epsilon()
}
