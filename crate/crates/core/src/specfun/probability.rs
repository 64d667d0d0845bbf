use std::fmt;

use crate::error::{Error, Result};
use crate::Real;

/// A probability in `[0, 1]`.
///
/// Values that miss a bound by no more than `1e-15` (or a few ulps for `f32`)
/// are clamped onto it; anything further out is rejected.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Probability<T>(T);

impl<T: Real> Probability<T> {
    pub fn new(value: T) -> Result<Self> {
        let slack = T::lit(1e-15).max(T::lit(4.0) * T::epsilon());
        if value.is_nan() {
            return Err(Error::ProbabilityRange(f64::NAN));
        }
        if value < T::zero() {
            if value >= -slack {
                return Ok(Self(T::zero()));
            }
            return Err(Error::ProbabilityRange(value.as_f64()));
        }
        if value > T::one() {
            if value <= T::one() + slack {
                return Ok(Self(T::one()));
            }
            return Err(Error::ProbabilityRange(value.as_f64()));
        }
        Ok(Self(value))
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// `1 - p`.
    #[inline]
    pub fn complement(self) -> Self {
        Self(T::one() - self.0)
    }
}

impl<T: fmt::Display> fmt::Display for Probability<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
