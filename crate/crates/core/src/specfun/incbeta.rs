use super::lngamma::ln_beta_unchecked;
use super::{convergence_tol, tiny, Probability, CF_MAX_ITER};
use crate::error::{domain, Error, Result};
use crate::Real;

/// Regularized incomplete beta I(x; a, b), the CDF of Beta(a, b) at x.
pub fn reg_inc_beta<T: Real>(x: T, a: T, b: T) -> Result<Probability<T>> {
    if !(T::zero()..=T::one()).contains(&x) {
        return Err(domain("reg_inc_beta", format!("x = {x}, need 0 <= x <= 1")));
    }
    reg_inc_beta_pair(x, T::one() - x, a, b)
}

/// I(x; a, b) where the caller also supplies y = 1 − x to full precision.
///
/// Outage arguments are ratios ε θ / (θ + ε θ) whose complement is known
/// exactly, so passing it avoids the cancellation in 1 − x near x = 1.
pub(crate) fn reg_inc_beta_pair<T: Real>(x: T, y: T, a: T, b: T) -> Result<Probability<T>> {
    if !(a > T::zero()) || !(b > T::zero()) || !a.is_finite() || !b.is_finite() {
        return Err(domain("reg_inc_beta", format!("a = {a}, b = {b}, need a, b > 0")));
    }
    if !(x >= T::zero() && y >= T::zero()) {
        return Err(domain("reg_inc_beta", format!("x = {x}, 1 - x = {y}")));
    }
    if x == T::zero() {
        return Ok(Probability::zero());
    }
    if y == T::zero() {
        return Ok(Probability::one());
    }
    let ln_front = a * x.ln() + b * y.ln() - ln_beta_unchecked(a, b);
    let front = ln_front.exp();
    let two = T::lit(2.0);
    let value = if x < (a + T::one()) / (a + b + two) {
        front * beta_fraction(x, a, b)? / a
    } else {
        T::one() - front * beta_fraction(y, b, a)? / b
    };
    Probability::new(value)
}

/// Continued fraction for I(x; a, b) · a / (xᵃ yᵇ / B(a, b)), modified Lentz.
fn beta_fraction<T: Real>(x: T, a: T, b: T) -> Result<T> {
    let tol = convergence_tol::<T>();
    let tiny = tiny::<T>();
    let one = T::one();
    let two = T::lit(2.0);
    let qab = a + b;
    let qap = a + one;
    let qam = a - one;
    let mut c = one;
    let mut d = one - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = d.recip();
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = T::count(m);
        let m2 = two * m;
        // even step
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = one + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        h = h * d * c;
        // odd step
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = one + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = d * c;
        h = h * delta;
        if (delta - one).abs() < tol {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        function: "reg_inc_beta",
        iterations: CF_MAX_ITER,
    })
}
