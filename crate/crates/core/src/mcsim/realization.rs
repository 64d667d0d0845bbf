use num_complex::Complex;

use crate::channel::{LinkSet, Ue};
use crate::error::Result;
use crate::outage::Strategy;
use crate::stochastic::{NakagamiParams, NakagamiSampler, RngStream};
use crate::Real;

/// Channel powers of both UEs in one realization, pathloss included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Realization<T> {
    pub z: [T; 2],
}

/// Unit-power fading coefficients of one link group, in polar form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polar<T> {
    pub amp: Vec<T>,
    pub phase: Vec<T>,
}

impl<T: Real> Polar<T> {
    fn zeros(n: usize) -> Self {
        Self {
            amp: vec![T::zero(); n],
            phase: vec![T::zero(); n],
        }
    }

    pub fn coefficient(&self, i: usize) -> Complex<T> {
        Complex::from_polar(self.amp[i], self.phase[i])
    }
}

/// Fading coefficients of every link in one realization.
///
/// Amplitudes are Nakagami with Ω = 1 and phases uniform on [0, 2π);
/// pathlosses are applied when powers are formed. `direct` holds one entry
/// per UE, the reflection groups one per IRS element.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw<T> {
    pub direct: Polar<T>,
    pub bs_irs: Polar<T>,
    pub ue_irs: [Polar<T>; 2],
}

impl<T: Real> ChannelDraw<T> {
    fn with_elements(n: usize) -> Self {
        Self {
            direct: Polar::zeros(2),
            bs_irs: Polar::zeros(n),
            ue_irs: [Polar::zeros(n), Polar::zeros(n)],
        }
    }

    /// Draws every coefficient of `links`. Reflection links are skipped when
    /// the scenario has no IRS.
    pub fn sample(links: &LinkSet<T>, stream: &mut RngStream) -> Result<Self> {
        let laws = Laws::new(links)?;
        let mut draw = Self::with_elements(laws.n_reflect);
        draw.redraw(&laws, stream);
        Ok(draw)
    }

    fn redraw(&mut self, laws: &Laws<T>, stream: &mut RngStream) {
        for i in 0..2 {
            self.direct.amp[i] = laws.direct[i].sample(stream);
            self.direct.phase[i] = stream.phase();
        }
        for n in 0..laws.n_reflect {
            self.bs_irs.amp[n] = laws.bs.sample(stream);
            self.bs_irs.phase[n] = stream.phase();
            for (g, law) in self.ue_irs.iter_mut().zip(&laws.irs) {
                g.amp[n] = law.sample(stream);
                g.phase[n] = stream.phase();
            }
        }
    }

    /// IRS phases aligning every reflected path of `ue` with its direct path:
    /// φ_n = arg h − arg(h_BS,n g_n).
    pub fn phases_for(&self, ue: Ue) -> Vec<T> {
        let g = &self.ue_irs[ue.index()];
        let h = self.direct.phase[ue.index()];
        (0..g.phase.len())
            .map(|n| h - (self.bs_irs.phase[n] + g.phase[n]))
            .collect()
    }

    /// Channel power of `ue` when the IRS is aligned to it:
    /// `(√ℓ_h |h| + √(ℓ_BS ℓ_g) Σ |h_BS,n| |g_n|)²`.
    pub fn coherent_power(&self, links: &LinkSet<T>, ue: Ue) -> T {
        let l = links.ue(ue);
        let g = &self.ue_irs[ue.index()];
        let s1 = self
            .bs_irs
            .amp
            .iter()
            .zip(&g.amp)
            .fold(T::zero(), |acc, (&b, &g)| acc + b * g);
        let a = l.ell_h.sqrt() * self.direct.amp[ue.index()] + (links.ell_bs() * l.ell_g).sqrt() * s1;
        a * a
    }

    /// Channel power of `ue` for arbitrary IRS phases:
    /// `|√ℓ_h h + √(ℓ_BS ℓ_g) Σ e^{jφ_n} h_BS,n g_n|²`.
    pub fn combined_power(&self, links: &LinkSet<T>, ue: Ue, phases: &[T]) -> T {
        let l = links.ue(ue);
        let g = &self.ue_irs[ue.index()];
        let zero = Complex::new(T::zero(), T::zero());
        let s = phases.iter().enumerate().fold(zero, |acc, (n, &phi)| {
            acc + Complex::from_polar(T::one(), phi) * self.bs_irs.coefficient(n) * g.coefficient(n)
        });
        let total = self.direct.coefficient(ue.index()) * l.ell_h.sqrt() + s * (links.ell_bs() * l.ell_g).sqrt();
        total.norm_sqr()
    }

    /// `combined_power` of `ue` with the phases aligned to the other UE.
    ///
    /// Each reflected term reduces to |h_BS,n| |g_n| e^{j(arg h_b − arg g_b,n + arg g_n)}:
    /// the BS-side phase cancels, leaving one sine/cosine per element.
    pub fn random_power(&self, links: &LinkSet<T>, ue: Ue) -> T {
        let b = ue.other().index();
        let l = links.ue(ue);
        let (gb, go) = (&self.ue_irs[b], &self.ue_irs[ue.index()]);
        let hb = self.direct.phase[b];
        let (mut re, mut im) = (T::zero(), T::zero());
        for n in 0..go.amp.len() {
            let r = self.bs_irs.amp[n] * go.amp[n];
            let (s, c) = (hb - gb.phase[n] + go.phase[n]).sin_cos();
            re = re + r * c;
            im = im + r * s;
        }
        let w = (links.ell_bs() * l.ell_g).sqrt();
        let h = self.direct.coefficient(ue.index()) * l.ell_h.sqrt();
        let (re, im) = (h.re + w * re, h.im + w * im);
        re * re + im * im
    }
}

/// Unit-power fading laws of a scenario.
struct Laws<T> {
    direct: [NakagamiSampler<T>; 2],
    bs: NakagamiSampler<T>,
    irs: [NakagamiSampler<T>; 2],
    n_reflect: usize,
}

impl<T: Real> Laws<T> {
    fn new(links: &LinkSet<T>) -> Result<Self> {
        let [u1, u2] = [links.ue(Ue::One), links.ue(Ue::Two)];
        let unit = |m: T| -> Result<NakagamiSampler<T>> { Ok(NakagamiSampler::new(&NakagamiParams::unit(m)?)) };
        let reflect = links.ell_bs() > T::zero();
        Ok(Self {
            direct: [unit(u1.m_h)?, unit(u2.m_h)?],
            bs: unit(links.m_bs())?,
            irs: [unit(u1.m_g)?, unit(u2.m_g)?],
            n_reflect: if reflect { links.n_elements() } else { 0 },
        })
    }
}

/// Reusable per-worker sampler of realizations under one strategy.
pub(crate) struct Sampler<T> {
    links: LinkSet<T>,
    boosted: Option<Ue>,
    laws: Laws<T>,
    draw: ChannelDraw<T>,
}

impl<T: Real> Sampler<T> {
    pub(crate) fn new(links: &LinkSet<T>, strategy: Strategy) -> Result<Self> {
        let links = strategy.apply(links);
        let laws = Laws::new(&links)?;
        Ok(Self {
            boosted: strategy.boosted(),
            draw: ChannelDraw::with_elements(laws.n_reflect),
            laws,
            links,
        })
    }

    pub(crate) fn next(&mut self, stream: &mut RngStream) -> Realization<T> {
        self.draw.redraw(&self.laws, stream);
        let mut z = [T::zero(); 2];
        match self.boosted {
            Some(b) if self.laws.n_reflect > 0 => {
                let o = b.other();
                z[b.index()] = self.draw.coherent_power(&self.links, b);
                z[o.index()] = self.draw.random_power(&self.links, o);
            }
            _ => {
                for ue in Ue::BOTH {
                    let a = self.draw.direct.amp[ue.index()];
                    z[ue.index()] = self.links.ue(ue).ell_h * a * a;
                }
            }
        }
        Realization { z }
    }
}

/// One realization of both channel powers under `strategy`.
pub fn sample_realization<T: Real>(
    links: &LinkSet<T>,
    strategy: Strategy,
    stream: &mut RngStream,
) -> Result<Realization<T>> {
    Ok(Sampler::new(links, strategy)?.next(stream))
}
