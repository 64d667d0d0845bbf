use super::{run_chunks, McSettings};
use crate::channel::s1_gamma_params;
use crate::error::{domain, Result};
use crate::stochastic::{sample_nakagami, GammaParams, NakagamiParams, RngStream};
use crate::Real;

const MIN_SAMPLES: u64 = 100_000;

/// A reflected-path sum whose law the analysis approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityQuantity {
    /// `S₁ = Σ |h_BS,n| |g_n|`, unit-power links.
    S1,
    /// `|S₂| = |Σ e^{jφ_n} h_BS,n g_n|` with independent uniform phases.
    S2Magnitude,
}

impl DensityQuantity {
    pub fn name(self) -> &'static str {
        match self {
            DensityQuantity::S1 => "s1",
            DensityQuantity::S2Magnitude => "s2",
        }
    }

    /// The law the analysis substitutes for this quantity.
    pub fn approximation<T: Real>(self, n_elements: usize, m_bs: T, m_g: T) -> Result<ApproxLaw<T>> {
        match self {
            DensityQuantity::S1 => Ok(ApproxLaw::Gamma(s1_gamma_params(n_elements, m_bs, m_g)?)),
            DensityQuantity::S2Magnitude => {
                if n_elements == 0 {
                    return Err(domain("approximation", "S2 needs at least one element"));
                }
                Ok(ApproxLaw::Rayleigh {
                    omega: T::count(n_elements),
                })
            }
        }
    }
}

/// Approximating law of a reflected-path sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApproxLaw<T> {
    Gamma(GammaParams<T>),
    /// Rayleigh amplitude with mean power `omega`.
    Rayleigh {
        omega: T,
    },
}

impl<T: Real> ApproxLaw<T> {
    pub fn pdf(&self, x: T) -> T {
        match self {
            ApproxLaw::Gamma(g) => g.pdf(x),
            ApproxLaw::Rayleigh { omega } => {
                if x < T::zero() {
                    T::zero()
                } else {
                    T::lit(2.0) * x / *omega * (-x * x / *omega).exp()
                }
            }
        }
    }

    pub fn cdf(&self, x: T) -> Result<T> {
        match self {
            ApproxLaw::Gamma(g) => Ok(g.cdf(x)?.value()),
            ApproxLaw::Rayleigh { omega } => Ok(if x <= T::zero() {
                T::zero()
            } else {
                -(-x * x / *omega).exp_m1()
            }),
        }
    }
}

/// Equal-width density histogram over `[0, max sample]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram<T> {
    pub bin_edges: Vec<T>,
    pub density: Vec<T>,
    pub n_samples: u64,
}

impl<T: Real> Histogram<T> {
    pub fn from_samples(samples: &[T], bins: usize) -> Result<Self> {
        if bins == 0 || samples.is_empty() {
            return Err(domain("Histogram", "need at least one bin and one sample"));
        }
        let max = samples.iter().fold(T::zero(), |m, &x| m.max(x));
        if !(max > T::zero()) || !max.is_finite() {
            return Err(domain("Histogram", format!("sample maximum {max}")));
        }
        let width = max / T::count(bins);
        let mut counts = vec![0u64; bins];
        for &x in samples {
            let i = (x / width).floor().to_usize().unwrap_or(0).min(bins - 1);
            counts[i] += 1;
        }
        let n = T::count(samples.len());
        Ok(Self {
            bin_edges: (0..=bins).map(|i| T::count(i) * width).collect(),
            density: counts.iter().map(|&c| T::lit(c as f64) / (n * width)).collect(),
            n_samples: samples.len() as u64,
        })
    }

    pub fn centers(&self) -> impl Iterator<Item = T> + '_ {
        self.bin_edges.windows(2).map(|w| (w[0] + w[1]) / T::lit(2.0))
    }

    pub fn width(&self) -> T {
        self.bin_edges[1] - self.bin_edges[0]
    }
}

/// Draws `settings.n_samples` values of `quantity` for an `n_elements` IRS.
pub fn density_samples<T: Real>(
    quantity: DensityQuantity,
    n_elements: usize,
    m_bs: T,
    m_g: T,
    settings: &McSettings,
) -> Result<Vec<T>> {
    settings.require_samples(MIN_SAMPLES, "density estimation")?;
    if n_elements == 0 {
        return Err(domain("density_samples", "need at least one element"));
    }
    let bs = NakagamiParams::unit(m_bs)?;
    let g = NakagamiParams::unit(m_g)?;
    let draw = |stream: &mut RngStream| -> T {
        match quantity {
            DensityQuantity::S1 => (0..n_elements).fold(T::zero(), |acc, _| {
                acc + sample_nakagami(&bs, stream) * sample_nakagami(&g, stream)
            }),
            DensityQuantity::S2Magnitude => {
                let (mut re, mut im) = (T::zero(), T::zero());
                for _ in 0..n_elements {
                    let r = sample_nakagami(&bs, stream) * sample_nakagami(&g, stream);
                    let (s, c) = stream.phase::<T>().sin_cos();
                    re = re + r * c;
                    im = im + r * s;
                }
                re.hypot(im)
            }
        }
    };
    let chunks = run_chunks(settings, |mut stream, len| {
        (0..len).map(|_| draw(&mut stream)).collect::<Vec<T>>()
    })?;
    Ok(chunks.concat())
}

/// Histogram of `quantity` with `bins` equal-width bins.
pub fn empirical_density<T: Real>(
    quantity: DensityQuantity,
    n_elements: usize,
    m_bs: T,
    m_g: T,
    bins: usize,
    settings: &McSettings,
) -> Result<Histogram<T>> {
    let samples = density_samples(quantity, n_elements, m_bs, m_g, settings)?;
    Histogram::from_samples(&samples, bins)
}
