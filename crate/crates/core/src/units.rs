//! dB conversions applied once at the configuration boundary.

use crate::Real;

/// 10^(dB/10). `-inf` maps to exactly 0.
pub fn db_to_linear<T: Real>(db: T) -> T {
    if db == T::neg_infinity() {
        return T::zero();
    }
    T::lit(10.0).powf(db / T::lit(10.0))
}

/// Watts from dBm: 10^((dBm − 30)/10).
pub fn dbm_to_watts<T: Real>(dbm: T) -> T {
    db_to_linear(dbm - T::lit(30.0))
}

pub fn linear_to_db<T: Real>(linear: T) -> T {
    T::lit(10.0) * linear.log10()
}
