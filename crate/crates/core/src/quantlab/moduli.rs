//! The log-type stability modulus: `alpha(t) = 1/(1 + log(log(1/t) + e))`
//! and `eta(t) = C (log(t^{-alpha(t)}))^{-theta} = C (alpha(t) log(1/t))^{-theta}`,
//! a rate intermediate between log and loglog.

use crate::error::{Error, Result};

/// `(alpha(t), eta(t))` for `0 < t < 1` and positive constants.
pub fn stability_modulus(t: f64, c: f64, theta: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::ArgumentOutOfRange(format!(
            "modulus argument {t} outside (0, 1)"
        )));
    }
    if !(c > 0.0 && theta > 0.0) {
        return Err(Error::ArgumentOutOfRange(format!(
            "constants must be positive, got C = {c}, theta = {theta}"
        )));
    }
    let log_inv = (1.0 / t).ln();
    let alpha = 1.0 / (1.0 + (log_inv + std::f64::consts::E).ln());
    let eta = c * (alpha * log_inv).powf(-theta);
    Ok((alpha, eta))
}
