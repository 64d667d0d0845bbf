use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{GammaParams, NakagamiParams};
use crate::Real;

/// A reproducible random stream.
///
/// Backed by a ChaCha counter generator: `(seed, index)` selects an
/// independent keystream, so Monte-Carlo chunks can be generated in any order
/// on any number of workers and still produce identical draws.
#[derive(Debug, Clone)]
pub struct RngStream(ChaCha8Rng);

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self(rng)
    }

    /// Uniform on [0, 1).
    #[inline]
    pub fn uniform<T: Real>(&mut self) -> T {
        T::lit(self.0.random::<f64>())
    }

    /// Uniform on (0, 1].
    #[inline]
    pub fn uniform_open_low<T: Real>(&mut self) -> T {
        T::one() - self.uniform()
    }

    #[inline]
    pub fn standard_normal<T: Real>(&mut self) -> T {
        T::lit(self.0.sample::<f64, _>(StandardNormal))
    }

    /// Uniform phase on [0, 2π).
    #[inline]
    pub fn phase<T: Real>(&mut self) -> T {
        T::TAU() * self.uniform::<T>()
    }
}

/// Γ(k, θ) variate generator with the Marsaglia–Tsang constants prepared.
///
/// Squeeze acceptance on a transformed normal; shapes below 1 draw
/// Γ(k + 1) and multiply by U^(1/k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSampler<T> {
    d: T,
    c: T,
    /// 1/k when k < 1.
    boost: Option<T>,
    theta: T,
}

impl<T: Real> GammaSampler<T> {
    pub fn new(params: &GammaParams<T>) -> Self {
        let k = params.k();
        let (shape, boost) = if k < T::one() {
            (k + T::one(), Some(k.recip()))
        } else {
            (k, None)
        };
        let d = shape - T::lit(1.0 / 3.0);
        Self {
            d,
            c: (T::lit(9.0) * d).sqrt().recip(),
            boost,
            theta: params.theta(),
        }
    }

    #[inline]
    pub fn sample(&self, stream: &mut RngStream) -> T {
        let one = T::one();
        let squeeze = T::lit(0.0331);
        let half = T::lit(0.5);
        let (d, c) = (self.d, self.c);
        let unit = loop {
            let x: T = stream.standard_normal();
            let v = one + c * x;
            if v <= T::zero() {
                continue;
            }
            let v = v * v * v;
            let u: T = stream.uniform_open_low();
            let x2 = x * x;
            if u < one - squeeze * x2 * x2 || u.ln() < half * x2 + d * (one - v + v.ln()) {
                break d * v;
            }
        };
        let unit = match self.boost {
            Some(inv_k) => unit * stream.uniform_open_low::<T>().powf(inv_k),
            None => unit,
        };
        unit * self.theta
    }
}

/// Nakagami(m, Ω) amplitude generator: square roots of Γ(m, Ω/m) powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiSampler<T>(GammaSampler<T>);

impl<T: Real> NakagamiSampler<T> {
    pub fn new(params: &NakagamiParams<T>) -> Self {
        Self(GammaSampler::new(&params.power_law()))
    }

    #[inline]
    pub fn sample(&self, stream: &mut RngStream) -> T {
        self.0.sample(stream).sqrt()
    }
}

/// One draw from Γ(k, θ).
pub fn sample_gamma<T: Real>(params: &GammaParams<T>, stream: &mut RngStream) -> T {
    GammaSampler::new(params).sample(stream)
}

/// One Nakagami(m, Ω) amplitude.
pub fn sample_nakagami<T: Real>(params: &NakagamiParams<T>, stream: &mut RngStream) -> T {
    NakagamiSampler::new(params).sample(stream)
}
