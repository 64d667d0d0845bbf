//! Nakagami and Gamma laws: parameters, raw moments, two-moment Gamma
//! matching, and the random variates the Monte-Carlo simulator draws.

mod moments;
mod params;
mod sampling;

pub use moments::{gamma_raw_moment, match_gamma, nakagami_raw_moment, scale_gamma};
pub use params::{GammaParams, NakagamiParams, PowerMoments};
pub use sampling::{sample_gamma, sample_nakagami, GammaSampler, NakagamiSampler, RngStream};
