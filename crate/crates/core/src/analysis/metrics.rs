use crate::error::{Error, Result};
use crate::linalg::{dist, norm, C64};

/// Recovered-signal SNR in decibels that counts as perfect recovery.
pub const PERFECT_RECOVERY_DB: f64 = 100.0;

/// `20·log10(‖x‖ / ‖x − x̂‖)`. Returns `f64::INFINITY` when the error norm is
/// below `1e-300`.
pub fn snr_db(x_true: &[C64], x_est: &[C64]) -> Result<f64> {
    if x_true.len() != x_est.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            x_true.len(),
            x_est.len()
        )));
    }
    let signal = norm(x_true);
    if signal == 0.0 {
        return Err(Error::invalid("SNR is undefined for a zero reference signal"));
    }
    let error = dist(x_true, x_est);
    if error < 1e-300 {
        return Ok(f64::INFINITY);
    }
    Ok(20.0 * (signal / error).log10())
}
