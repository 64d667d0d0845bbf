use super::lngamma::{half_ln_two_pi, ln1p_minus_identity, ln_gamma_unchecked, stirling_correction, STIRLING_MIN};
use super::{convergence_tol, tiny, Probability};
use crate::error::{domain, Error, Result};
use crate::Real;

/// The series needs O(√k) terms near x ≈ k; the cap covers shapes far past 10⁴.
const SERIES_MAX_ITER: usize = 5000;
const CF_MAX_ITER: usize = 5000;

/// Regularized lower incomplete gamma P(k, x) = γ(k, x) / Γ(k).
///
/// This is the CDF of a unit-scale Gamma(k) variable at x. Uses the power
/// series for x < k + 1 and the Legendre continued fraction for Q = 1 − P
/// otherwise.
pub fn reg_inc_gamma_lower<T: Real>(k: T, x: T) -> Result<Probability<T>> {
    if !(k > T::zero()) || !k.is_finite() {
        return Err(domain("reg_inc_gamma_lower", format!("k = {k}, need k > 0")));
    }
    if !(x >= T::zero()) {
        return Err(domain("reg_inc_gamma_lower", format!("x = {x}, need x >= 0")));
    }
    if x == T::zero() {
        return Ok(Probability::zero());
    }
    if x.is_infinite() {
        return Ok(Probability::one());
    }
    let ln_prefactor = ln_power_prefactor(k, x);
    let p = if x < k + T::one() {
        ln_prefactor.exp() * lower_series(k, x)?
    } else {
        T::one() - ln_prefactor.exp() * upper_fraction(k, x)?
    };
    Probability::new(p)
}

/// ln[xᵏ e⁻ˣ / Γ(k)].
///
/// For large k the terms k ln x, x and ln Γ(k) are each far larger than their
/// sum; the Stirling form subtracts them analytically.
fn ln_power_prefactor<T: Real>(k: T, x: T) -> T {
    if k < T::lit(STIRLING_MIN) {
        return k * x.ln() - x - ln_gamma_unchecked(k);
    }
    k * ln1p_minus_identity((x - k) / k) + T::lit(0.5) * k.ln() - half_ln_two_pi::<T>() - stirling_correction(k)
}

/// Σ xⁿ / (k (k+1) ⋯ (k+n)).
fn lower_series<T: Real>(k: T, x: T) -> Result<T> {
    let tol = convergence_tol::<T>();
    let mut denom = k;
    let mut term = k.recip();
    let mut sum = term;
    for _ in 0..SERIES_MAX_ITER {
        denom = denom + T::one();
        term = term * x / denom;
        sum = sum + term;
        if term.abs() < sum.abs() * tol {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        function: "reg_inc_gamma_lower (series)",
        iterations: SERIES_MAX_ITER,
    })
}

/// Continued fraction for Γ(k, x) e^x x^(−k), modified Lentz.
fn upper_fraction<T: Real>(k: T, x: T) -> Result<T> {
    let tol = convergence_tol::<T>();
    let tiny = tiny::<T>();
    let two = T::lit(2.0);
    let mut b = x + T::one() - k;
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..=CF_MAX_ITER {
        let i = T::count(i);
        let an = -i * (i - k);
        b = b + two;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = d * c;
        h = h * delta;
        if (delta - T::one()).abs() < tol {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        function: "reg_inc_gamma_lower (continued fraction)",
        iterations: CF_MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: f64, x: f64) -> f64 {
        reg_inc_gamma_lower(k, x).unwrap().value()
    }

    #[test]
    fn origin_and_exponential_case() {
        assert_eq!(p(2.5, 0.0), 0.0);
        for &x in &[1e-8_f64, 0.1, 0.5, 1.0, 1.9, 2.1, 5.0, 30.0] {
            let want = -(-x).exp_m1();
            assert!((p(1.0, x) - want).abs() < 1e-15, "x = {x}");
        }
    }

    #[test]
    fn integer_shape_closed_form() {
        // P(3, x) = 1 − e^(−x) (1 + x + x²/2)
        for &x in &[0.3_f64, 2.0, 3.9, 4.1, 12.0] {
            let want = 1.0 - (-x).exp() * (1.0 + x + x * x / 2.0);
            assert!((p(3.0, x) - want).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn half_shape_is_erf() {
        // P(1/2, x) = erf(√x); erf(1) = 0.8427007929497149
        assert!((p(0.5, 1.0) - 0.842_700_792_949_714_9).abs() < 1e-14);
    }

    #[test]
    fn branches_meet_continuously() {
        for &k in &[0.6, 3.0, 52.27, 400.0] {
            let edge = k + 1.0;
            let (lo, hi) = (edge * (1.0 - 1e-12), edge * (1.0 + 1e-12));
            let (below, above) = (p(k, lo), p(k, hi));
            let pdf = ((k - 1.0) * edge.ln() - edge - ln_gamma_unchecked(k)).exp();
            assert!((above - below - pdf * (hi - lo)).abs() < 2e-14, "k = {k}");
            assert!(above >= below);
        }
    }

    #[test]
    fn saturates_far_in_the_tail() {
        assert_eq!(p(4.0, 1e4), 1.0);
        assert_eq!(p(4.0, f64::INFINITY), 1.0);
        assert!(p(40.0, 1e-3) < 1e-100);
    }

    #[test]
    fn domain_errors() {
        assert!(reg_inc_gamma_lower(0.0_f64, 1.0).is_err());
        assert!(reg_inc_gamma_lower(-1.0_f64, 1.0).is_err());
        assert!(reg_inc_gamma_lower(1.0_f64, -1.0).is_err());
        assert!(reg_inc_gamma_lower(1.0_f64, f64::NAN).is_err());
    }
}
