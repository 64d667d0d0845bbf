use crate::error::{domain, Result};
use crate::specfun::{ln_gamma, reg_inc_gamma_lower, Probability};
use crate::Real;

/// Nakagami-m amplitude law: shape `m` and mean power `omega` = E{|H|²}.
///
/// `m = 1` is Rayleigh; `m → ∞` tends to a deterministic amplitude √Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiParams<T> {
    m: T,
    omega: T,
}

impl<T: Real> NakagamiParams<T> {
    pub const MIN_SHAPE: f64 = 0.5;

    pub fn new(m: T, omega: T) -> Result<Self> {
        if !(m >= T::lit(Self::MIN_SHAPE)) || !m.is_finite() {
            return Err(domain("NakagamiParams", format!("m = {m}, need m >= 0.5")));
        }
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(domain("NakagamiParams", format!("omega = {omega}, need omega > 0")));
        }
        Ok(Self { m, omega })
    }

    /// Unit-power law Nakagami(m, 1).
    pub fn unit(m: T) -> Result<Self> {
        Self::new(m, T::one())
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// The power |H|² of a Nakagami(m, Ω) amplitude is exactly Γ(m, Ω/m).
    pub fn power_law(&self) -> GammaParams<T> {
        GammaParams {
            k: self.m,
            theta: self.omega / self.m,
        }
    }
}

/// Gamma law with shape `k` and scale `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams<T> {
    k: T,
    theta: T,
}

impl<T: Real> GammaParams<T> {
    pub fn new(k: T, theta: T) -> Result<Self> {
        if !(k > T::zero()) || !k.is_finite() {
            return Err(domain("GammaParams", format!("k = {k}, need k > 0")));
        }
        if !(theta > T::zero()) || !theta.is_finite() {
            return Err(domain("GammaParams", format!("theta = {theta}, need theta > 0")));
        }
        Ok(Self { k, theta })
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn mean(&self) -> T {
        self.k * self.theta
    }

    pub fn variance(&self) -> T {
        self.k * self.theta * self.theta
    }

    pub fn cdf(&self, x: T) -> Result<Probability<T>> {
        if x <= T::zero() {
            return Ok(Probability::zero());
        }
        reg_inc_gamma_lower(self.k, x / self.theta)
    }

    pub fn ln_pdf(&self, x: T) -> T {
        if x <= T::zero() {
            return if self.k == T::one() {
                -self.theta.ln()
            } else if self.k < T::one() {
                T::infinity()
            } else {
                T::neg_infinity()
            };
        }
        let lg = ln_gamma(self.k).expect("shape validated at construction");
        (self.k - T::one()) * x.ln() - x / self.theta - lg - self.k * self.theta.ln()
    }

    pub fn pdf(&self, x: T) -> T {
        self.ln_pdf(x).exp()
    }
}

/// First and second raw moments of a non-negative power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerMoments<T> {
    pub mu: T,
    pub mu2: T,
}

impl<T: Real> PowerMoments<T> {
    /// Validates `mu > 0` and a finite positive second moment. Whether the
    /// spread suffices for a Gamma fit is decided by [`match_gamma`](super::match_gamma).
    pub fn new(mu: T, mu2: T) -> Result<Self> {
        if !(mu > T::zero()) || !mu.is_finite() {
            return Err(domain("PowerMoments", format!("mu = {mu}, need mu > 0")));
        }
        if !(mu2 > T::zero()) || !mu2.is_finite() {
            return Err(domain("PowerMoments", format!("mu2 = {mu2}, need mu2 > 0")));
        }
        Ok(Self { mu, mu2 })
    }

    pub fn variance(&self) -> T {
        self.mu2 - self.mu * self.mu
    }

    /// Moments of c·X.
    pub fn scaled(&self, c: T) -> Self {
        Self {
            mu: c * self.mu,
            mu2: c * c * self.mu2,
        }
    }
}
