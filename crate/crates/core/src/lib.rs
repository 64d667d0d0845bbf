//! Outage probability of a two-user uplink NOMA system assisted by an
//! intelligent reflecting surface (IRS), under Nakagami-m fading.
//!
//! The IRS aligns its phases to one UE. The channel power of each UE is
//! approximated by a Gamma law matched to its first two moments, which gives
//! closed-form outage probabilities with and without interference
//! cancellation. [`mcsim`] simulates the exact system as a reference.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below fix the usual choice.

// `!(x > 0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod config;
pub mod csv;
pub mod error;
pub mod gof;
pub mod mcsim;
pub mod outage;
pub mod scalar;
pub mod specfun;
pub mod stochastic;
pub mod units;

pub use channel::{LinkSet, Ue, UeLinks};
pub use error::{Error, Result};
pub use outage::{Mode, OutageCurve, Strategy};
pub use scalar::Real;

pub type LinkSetF64 = channel::LinkSet<f64>;
pub type UeLinksF64 = channel::UeLinks<f64>;
pub type GammaParamsF64 = stochastic::GammaParams<f64>;
pub type NakagamiParamsF64 = stochastic::NakagamiParams<f64>;
pub type PowerMomentsF64 = stochastic::PowerMoments<f64>;
pub type ProbabilityF64 = specfun::Probability<f64>;
pub type OutageCurveF64 = outage::OutageCurve<f64>;
pub type EmpiricalCurveF64 = mcsim::EmpiricalCurve<f64>;
pub type HistogramF64 = mcsim::Histogram<f64>;
