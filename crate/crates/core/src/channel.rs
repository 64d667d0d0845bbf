//! Statistics of the effective channel powers of the two UEs.
//!
//! The UE the IRS is configured for adds every reflected path in phase with
//! its direct path, so its channel power is
//! `Z = (√ℓ_h |h| + √(ℓ_BS ℓ_g) S₁)²` with `S₁ = Σ |h_BS,n| |g_n|`.
//! For the other UE the reflected paths add with effectively random phases
//! and the reflected sum behaves like a circular complex Gaussian of power
//! `N ℓ_BS ℓ_g`. Each power is summarised by its first two raw moments and
//! replaced by the Gamma law with the same moments.
//!
//! Direct and reflected links are taken to be independent.

use crate::error::{domain, Error, Result};
use crate::specfun::ln_gamma_ratio;
use crate::stochastic::{
    gamma_raw_moment, match_gamma, nakagami_raw_moment, scale_gamma, GammaParams, NakagamiParams, PowerMoments,
};
use crate::units::{db_to_linear, dbm_to_watts};
use crate::Real;

/// One of the two NOMA users.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ue {
    One,
    Two,
}

impl Ue {
    pub const BOTH: [Ue; 2] = [Ue::One, Ue::Two];

    pub fn index(self) -> usize {
        match self {
            Ue::One => 0,
            Ue::Two => 1,
        }
    }

    pub fn other(self) -> Ue {
        match self {
            Ue::One => Ue::Two,
            Ue::Two => Ue::One,
        }
    }

    /// 1-based label used in output files.
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

/// How the IRS phases combine a UE's reflected paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombiningRole {
    /// Phases are aligned to this UE.
    Coherent,
    /// Phases are aligned to the other UE and look random to this one.
    Random,
}

/// Per-UE link parameters. Pathlosses and powers are linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UeLinks<T> {
    /// Nakagami shape of the UE–BS direct link.
    pub m_h: T,
    /// Pathloss of the direct link; 0 removes it.
    pub ell_h: T,
    /// Nakagami shape of the UE–IRS links.
    pub m_g: T,
    /// Pathloss of the UE–IRS links.
    pub ell_g: T,
    /// Transmit power in watts.
    pub p_tx: T,
}

/// All link parameters of one two-UE scenario, in linear units.
///
/// `ell_bs == 0` encodes the deployment without an IRS: reflection terms are
/// dropped analytically rather than approached as a limit.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSet<T> {
    n_elements: usize,
    m_bs: T,
    ell_bs: T,
    ues: [UeLinks<T>; 2],
    p_noise: T,
}

fn check_shape<T: Real>(name: &str, m: T) -> Result<()> {
    if m >= T::lit(NakagamiParams::<T>::MIN_SHAPE) && m.is_finite() {
        Ok(())
    } else {
        Err(domain("LinkSet", format!("{name} = {m}, need shape >= 0.5")))
    }
}

fn check_pathloss<T: Real>(name: &str, ell: T) -> Result<()> {
    if ell >= T::zero() && ell.is_finite() {
        Ok(())
    } else {
        Err(domain("LinkSet", format!("{name} = {ell}, need pathloss >= 0")))
    }
}

fn check_power<T: Real>(name: &str, p: T) -> Result<()> {
    if p > T::zero() && p.is_finite() {
        Ok(())
    } else {
        Err(domain("LinkSet", format!("{name} = {p}, need power > 0")))
    }
}

impl<T: Real> LinkSet<T> {
    pub fn new(n_elements: usize, m_bs: T, ell_bs: T, ues: [UeLinks<T>; 2], p_noise: T) -> Result<Self> {
        check_shape("m_bs", m_bs)?;
        check_pathloss("ell_bs", ell_bs)?;
        if ell_bs > T::zero() && n_elements == 0 {
            return Err(domain("LinkSet", "an IRS with ell_bs > 0 needs at least one element"));
        }
        for (ue, links) in Ue::BOTH.iter().zip(&ues) {
            let n = ue.number();
            check_shape(&format!("m_h{n}"), links.m_h)?;
            check_shape(&format!("m_g{n}"), links.m_g)?;
            check_pathloss(&format!("ell_h{n}"), links.ell_h)?;
            check_pathloss(&format!("ell_g{n}"), links.ell_g)?;
            check_power(&format!("p_tx{n}"), links.p_tx)?;
        }
        check_power("p_noise", p_noise)?;
        Ok(Self {
            n_elements,
            m_bs,
            ell_bs,
            ues,
            p_noise,
        })
    }

    /// The example deployment: 32 elements, UE1 line-of-sight dominated,
    /// UE2 close to Rayleigh, both UEs transmitting at `p_dbm`.
    pub fn example_scenario(p_dbm: T) -> Self {
        let p = dbm_to_watts(p_dbm);
        let db = |x: f64| db_to_linear(T::lit(x));
        let ue = |m_h: f64, ell_h_db: f64| UeLinks {
            m_h: T::lit(m_h),
            ell_h: db(ell_h_db),
            m_g: T::lit(2.25),
            ell_g: db(-60.0),
            p_tx: p,
        };
        Self::new(
            32,
            T::lit(6.0),
            db(-60.0),
            [ue(4.0, -110.0), ue(1.1, -120.0)],
            dbm_to_watts(T::lit(-100.0)),
        )
        .expect("example scenario is valid")
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn m_bs(&self) -> T {
        self.m_bs
    }

    pub fn ell_bs(&self) -> T {
        self.ell_bs
    }

    pub fn ue(&self, ue: Ue) -> &UeLinks<T> {
        &self.ues[ue.index()]
    }

    pub fn p_noise(&self) -> T {
        self.p_noise
    }

    /// Same links with the IRS removed.
    pub fn without_irs(&self) -> Self {
        Self {
            ell_bs: T::zero(),
            ..self.clone()
        }
    }

    /// Same links with both UEs transmitting at `p_tx` watts.
    pub fn with_tx_power(&self, p_tx: T) -> Result<Self> {
        check_power("p_tx", p_tx)?;
        let mut out = self.clone();
        for links in &mut out.ues {
            links.p_tx = p_tx;
        }
        Ok(out)
    }

    pub fn with_n_elements(&self, n_elements: usize) -> Result<Self> {
        Self::new(n_elements, self.m_bs, self.ell_bs, self.ues, self.p_noise)
    }

    /// Whether the UE's signal reaches the BS through the IRS at all.
    pub fn has_reflection(&self, ue: Ue) -> bool {
        self.ell_bs > T::zero() && self.ue(ue).ell_g > T::zero() && self.n_elements > 0
    }

    pub fn has_direct(&self, ue: Ue) -> bool {
        self.ue(ue).ell_h > T::zero()
    }

    fn direct_law(&self, ue: Ue) -> Result<NakagamiParams<T>> {
        let links = self.ue(ue);
        NakagamiParams::new(links.m_h, links.ell_h)
    }
}

/// Mean of one reflected amplitude product, E{|h_BS,n|} E{|g_n|}, for unit-power links:
/// Γ(m_BS + ½) Γ(m_g + ½) / (Γ(m_BS) Γ(m_g) √(m_BS m_g)).
pub fn mu1<T: Real>(m_bs: T, m_g: T) -> Result<T> {
    check_shape("m_bs", m_bs)?;
    check_shape("m_g", m_g)?;
    let half = T::lit(0.5);
    let ln_mean = |m: T| ln_gamma_ratio(m, half);
    Ok((ln_mean(m_bs)? + ln_mean(m_g)?).exp())
}

/// Gamma approximation of S₁ = Σ |h_BS,n| |g_n| over `n_elements` unit-power
/// element pairs: shape N μ₁²/(1 − μ₁²), scale (1 − μ₁²)/μ₁.
pub fn s1_gamma_params<T: Real>(n_elements: usize, m_bs: T, m_g: T) -> Result<GammaParams<T>> {
    if n_elements == 0 {
        return Err(domain("s1_gamma_params", "need at least one element"));
    }
    let mu1 = mu1(m_bs, m_g)?;
    if mu1 >= T::one() - T::lit(1e-12) {
        return Err(Error::DegenerateS1 { mu1: mu1.as_f64() });
    }
    let spread = (T::one() - mu1) * (T::one() + mu1);
    GammaParams::new(T::count(n_elements) * mu1 * mu1 / spread, spread / mu1)
}

/// Raw moments E{Xᵖ}, p = 0..=4, of the pathloss-scaled direct amplitude.
fn direct_moments<T: Real>(links: &LinkSet<T>, ue: Ue) -> Result<[T; 5]> {
    if !links.has_direct(ue) {
        return Ok([T::one(), T::zero(), T::zero(), T::zero(), T::zero()]);
    }
    let law = links.direct_law(ue)?;
    let mut out = [T::one(); 5];
    for p in 1..=4 {
        out[p as usize] = nakagami_raw_moment(&law, p)?;
    }
    Ok(out)
}

fn no_path(ue: Ue) -> Error {
    domain(
        "channel",
        format!("UE{} has neither a direct nor a reflected path", ue.number()),
    )
}

/// Moments of the channel power of a UE whose reflected paths are combined
/// in phase with its direct path.
pub fn coherent_power_moments<T: Real>(links: &LinkSet<T>, ue: Ue) -> Result<PowerMoments<T>> {
    let d = direct_moments(links, ue)?;
    let r = if links.has_reflection(ue) {
        let u = links.ue(ue);
        let s1 = s1_gamma_params(links.n_elements(), links.m_bs(), u.m_g)?;
        let reflected = scale_gamma(&s1, (links.ell_bs() * u.ell_g).sqrt())?;
        let mut r = [T::one(); 5];
        for p in 1..=4 {
            r[p as usize] = gamma_raw_moment(&reflected, p)?;
        }
        r
    } else if links.has_direct(ue) {
        [T::one(), T::zero(), T::zero(), T::zero(), T::zero()]
    } else {
        return Err(no_path(ue));
    };
    let (two, four, six) = (T::lit(2.0), T::lit(4.0), T::lit(6.0));
    let mu = d[2] + r[2] + two * d[1] * r[1];
    let mu2 = d[4] + r[4] + six * d[2] * r[2] + four * d[3] * r[1] + four * d[1] * r[3];
    PowerMoments::new(mu, mu2)
}

/// Moments of the channel power of a UE whose reflected paths add with
/// random phases; the reflected magnitude is Rayleigh with power N ℓ_BS ℓ_g.
pub fn random_power_moments<T: Real>(links: &LinkSet<T>, ue: Ue) -> Result<PowerMoments<T>> {
    let d = direct_moments(links, ue)?;
    let r = if links.has_reflection(ue) {
        let power = T::count(links.n_elements()) * links.ell_bs() * links.ue(ue).ell_g;
        let law = NakagamiParams::new(T::one(), power)?;
        [
            T::one(),
            nakagami_raw_moment(&law, 1)?,
            nakagami_raw_moment(&law, 2)?,
            nakagami_raw_moment(&law, 3)?,
            nakagami_raw_moment(&law, 4)?,
        ]
    } else if links.has_direct(ue) {
        [T::one(), T::zero(), T::zero(), T::zero(), T::zero()]
    } else {
        return Err(no_path(ue));
    };
    let mu = d[2] + r[2];
    let mu2 = d[4] + r[4] + T::lit(4.0) * d[2] * r[2];
    PowerMoments::new(mu, mu2)
}

/// Gamma law of the received power Z·P of one UE.
///
/// Without a reflected path the power is exactly Γ(m_h, P ℓ_h / m_h) and is
/// returned as such instead of going through moment matching.
pub fn received_power_gamma<T: Real>(links: &LinkSet<T>, ue: Ue, role: CombiningRole) -> Result<GammaParams<T>> {
    let p_tx = links.ue(ue).p_tx;
    if !links.has_reflection(ue) {
        if !links.has_direct(ue) {
            return Err(no_path(ue));
        }
        return scale_gamma(&links.direct_law(ue)?.power_law(), p_tx);
    }
    let moments = match role {
        CombiningRole::Coherent => coherent_power_moments(links, ue)?,
        CombiningRole::Random => random_power_moments(links, ue)?,
    };
    scale_gamma(&match_gamma(&moments)?, p_tx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn direct_only(m_h: f64, ell_h: f64, p: f64) -> LinkSet<f64> {
        let ue = UeLinks {
            m_h,
            ell_h,
            m_g: 2.0,
            ell_g: 1e-6,
            p_tx: p,
        };
        LinkSet::new(8, 3.0, 0.0, [ue, ue], 1e-13).unwrap()
    }

    #[test]
    fn mu1_values() {
        assert!(rel(mu1(1.0_f64, 1.0).unwrap(), std::f64::consts::FRAC_PI_4) < 1e-15);
        assert!(mu1(50.0_f64, 50.0).unwrap() > 0.99);
        assert!(mu1(50.0_f64, 50.0).unwrap() < 1.0);
        // m_BS = 3, m_g = 1: Γ(3.5)/(Γ(3)√3) · √π/2
        let want = (2.5 * 1.5 * 0.5 * std::f64::consts::PI.sqrt() / (2.0 * 3.0_f64.sqrt()))
            * std::f64::consts::PI.sqrt()
            / 2.0;
        let got = mu1(3.0_f64, 1.0).unwrap();
        assert!(rel(got, want) < 1e-14);
        assert!((got - 0.85025).abs() < 5e-5);
        assert!(mu1(0.4_f64, 1.0).is_err());
    }

    #[test]
    fn s1_fit_for_four_elements() {
        let g = s1_gamma_params(4, 3.0_f64, 1.0).unwrap();
        assert!((g.k() - 10.44).abs() < 0.01, "{}", g.k());
        assert!((g.theta() - 0.3258).abs() < 1e-3, "{}", g.theta());
        let mu = mu1(3.0_f64, 1.0).unwrap();
        assert!(rel(g.mean(), 4.0 * mu) < 1e-14);
        assert!(rel(g.variance(), 4.0 * (1.0 - mu * mu)) < 1e-14);
        let doubled = s1_gamma_params(8, 3.0_f64, 1.0).unwrap();
        assert!(rel(doubled.k(), 2.0 * g.k()) < 1e-15);
        assert_eq!(doubled.theta(), g.theta());
        assert!(s1_gamma_params(0, 3.0_f64, 1.0).is_err());
    }

    #[test]
    fn s1_degenerates_for_deterministic_hops() {
        assert!(matches!(
            s1_gamma_params(4, 1e15_f64, 1e15),
            Err(Error::DegenerateS1 { .. })
        ));
    }

    #[test]
    fn no_irs_collapses_to_nakagami_power() {
        let links = direct_only(2.0, 1e-11, 0.1);
        for ue in Ue::BOTH {
            let c = coherent_power_moments(&links, ue).unwrap();
            let r = random_power_moments(&links, ue).unwrap();
            assert!(rel(c.mu, 1e-11) < 1e-14);
            assert!(rel(c.mu2, 1e-22 * 1.5) < 1e-14);
            assert_eq!(c, r);
            for role in [CombiningRole::Coherent, CombiningRole::Random] {
                let g = received_power_gamma(&links, ue, role).unwrap();
                assert_eq!(g.k(), 2.0);
                assert!(rel(g.theta(), 0.1 * 1e-11 / 2.0) < 1e-15);
            }
        }
    }

    #[test]
    fn tx_power_scales_theta_only() {
        let links = LinkSet::example_scenario(20.0_f64);
        let doubled = links.with_tx_power(2.0 * links.ue(Ue::One).p_tx).unwrap();
        for (ue, role) in [(Ue::One, CombiningRole::Coherent), (Ue::Two, CombiningRole::Random)] {
            let a = received_power_gamma(&links, ue, role).unwrap();
            let b = received_power_gamma(&doubled, ue, role).unwrap();
            assert_eq!(a.k(), b.k());
            assert!(rel(b.theta(), 2.0 * a.theta()) < 1e-15);
        }
    }

    #[test]
    fn reflection_only_second_moment() {
        let mut ue = UeLinks {
            m_h: 1.0,
            ell_h: 0.0,
            m_g: 2.25,
            ell_g: 1e-6,
            p_tx: 1.0,
        };
        let links = LinkSet::new(32, 6.0_f64, 1e-6, [ue, ue], 1e-13).unwrap();
        let s1 = s1_gamma_params(32, 6.0_f64, 2.25).unwrap();
        let k_s1 = s1.k() / 32.0;
        let theta = s1.theta();
        let want = 1e-6 * 1e-6 * theta * theta * (32.0 * 32.0 * k_s1 * k_s1 + 32.0 * k_s1);
        let got = coherent_power_moments(&links, Ue::One).unwrap().mu;
        assert!(rel(got, want) < 1e-13);

        let random = random_power_moments(&links, Ue::Two).unwrap().mu;
        assert!(rel(random, 32.0 * 1e-12) < 1e-14);

        ue.ell_g = 0.0;
        let dark = LinkSet::new(32, 6.0_f64, 1e-6, [ue, ue], 1e-13).unwrap();
        assert!(coherent_power_moments(&dark, Ue::One).is_err());
        assert!(received_power_gamma(&dark, Ue::Two, CombiningRole::Random).is_err());
    }

    #[test]
    fn coherent_exceeds_random_by_cross_term() {
        let base = LinkSet::example_scenario(20.0_f64);
        for n in [1_usize, 32] {
            let links = base.with_n_elements(n).unwrap();
            for ue in Ue::BOTH {
                let c = coherent_power_moments(&links, ue).unwrap();
                let r = random_power_moments(&links, ue).unwrap();
                let u = links.ue(ue);
                let d1 = nakagami_raw_moment(&NakagamiParams::new(u.m_h, u.ell_h).unwrap(), 1).unwrap();
                let mu = mu1(6.0, u.m_g).unwrap();
                let ell = links.ell_bs() * u.ell_g;
                let r1 = n as f64 * mu * ell.sqrt();
                // In-phase addition also lifts the reflected power by N(N − 1) μ₁² ℓ_BS ℓ_g.
                let extra = ell * (n * (n - 1)) as f64 * mu * mu;
                assert!(rel(c.mu - r.mu, 2.0 * d1 * r1 + extra) < 1e-9, "n = {n}");
            }
        }
    }

    #[test]
    fn n_scaling() {
        let base = LinkSet::example_scenario(20.0_f64);
        let reflected = |n: usize, role: CombiningRole| {
            let links = base.with_n_elements(n).unwrap();
            let direct = base.without_irs();
            let (with, without) = match role {
                CombiningRole::Coherent => (
                    coherent_power_moments(&links, Ue::One).unwrap().mu,
                    coherent_power_moments(&direct, Ue::One).unwrap().mu,
                ),
                CombiningRole::Random => (
                    random_power_moments(&links, Ue::One).unwrap().mu,
                    random_power_moments(&direct, Ue::One).unwrap().mu,
                ),
            };
            (with, without)
        };
        let per_n: Vec<f64> = [4, 64, 1024]
            .iter()
            .map(|&n| {
                let (with, without) = reflected(n, CombiningRole::Random);
                (with - without) / n as f64
            })
            .collect();
        assert!(rel(per_n[0], per_n[2]) < 1e-9 && rel(per_n[1], per_n[2]) < 1e-9);

        let links = |n: usize| {
            let mut ue = *base.ue(Ue::One);
            ue.ell_h = 0.0;
            LinkSet::new(n, 6.0, 1e-6, [ue, ue], 1e-13).unwrap()
        };
        let per_n2: Vec<f64> = [16, 256, 1024]
            .iter()
            .map(|&n| coherent_power_moments(&links(n), Ue::One).unwrap().mu / (n * n) as f64)
            .collect();
        let mu = mu1(6.0, 2.25).unwrap();
        let limit = 1e-12 * mu * mu;
        assert!(rel(per_n2[2], limit) < rel(per_n2[0], limit));
        assert!(rel(per_n2[2], limit) < 1e-3);
    }

    #[test]
    fn link_validation() {
        let ue = UeLinks {
            m_h: 0.3,
            ell_h: 1.0,
            m_g: 1.0,
            ell_g: 1.0,
            p_tx: 1.0,
        };
        assert!(LinkSet::new(4, 1.0_f64, 1.0, [ue, ue], 1.0).is_err());
        let ok = UeLinks { m_h: 1.0, ..ue };
        assert!(LinkSet::new(0, 1.0_f64, 1.0, [ok, ok], 1.0).is_err());
        assert!(LinkSet::new(0, 1.0_f64, 0.0, [ok, ok], 1.0).is_ok());
        assert!(LinkSet::new(4, 1.0_f64, 1.0, [ok, ok], 0.0).is_err());
        assert!(LinkSet::new(4, 1.0_f64, -1.0, [ok, ok], 1.0).is_err());
    }
}
