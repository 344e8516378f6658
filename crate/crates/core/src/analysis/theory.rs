use crate::error::{Error, Result};
use crate::linalg::{dist, norm, C64};
use crate::recovery::RecoveryTrace;

/// Error-bound constants of the main recovery guarantee for given
/// `δ4k`, `ε1`, `ε2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremConstants {
    pub delta4k: f64,
    pub eps1: f64,
    pub eps2: f64,
    /// Per-iteration contraction factor.
    pub c1: f64,
    /// Noise amplification factor.
    pub c2: f64,
}

impl TheoremConstants {
    /// Whether the iteration contracts, `C1 < 1`.
    pub fn contracts(&self) -> bool {
        self.c1 < 1.0
    }
}

/// `C1 = ((2+ε1)δ + ε1)(2+ε2)·√((1+δ)/(1−δ))` and
/// `C2 = (2+ε2)((2+ε1)(1+δ) + 2)/√(1−δ)` with `δ = δ4k`.
pub fn theorem1_constants(delta4k: f64, eps1: f64, eps2: f64) -> Result<TheoremConstants> {
    if !(0.0..1.0).contains(&delta4k) {
        return Err(Error::invalid(format!("delta4k must lie in [0, 1), got {delta4k}")));
    }
    if !(eps1 >= 0.0) || !(eps2 >= 0.0) || !eps1.is_finite() || !eps2.is_finite() {
        return Err(Error::invalid("eps1 and eps2 must be finite and non-negative"));
    }
    let d = delta4k;
    let c1 = ((2.0 + eps1) * d + eps1) * (2.0 + eps2) * ((1.0 + d) / (1.0 - d)).sqrt();
    let c2 = (2.0 + eps2) * ((2.0 + eps1) * (1.0 + d) + 2.0) / (1.0 - d).sqrt();
    Ok(TheoremConstants {
        delta4k,
        eps1,
        eps2,
        c1,
        c2,
    })
}

/// Largest `δ4k` for which the geometric envelope below is guaranteed with
/// `(ε1, ε2) = (0.1, 1)`.
pub const ENVELOPE_DELTA: f64 = 0.029;
/// Noise coefficient of the envelope.
pub const ENVELOPE_NOISE_FACTOR: f64 = 25.4;

/// Comparison of a trace with `‖x − xˡ‖ ≤ 2^{-ℓ}‖x‖ + 25.4‖e‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    /// Whether every iterate, including `x⁰ = 0`, is within the envelope.
    pub holds: bool,
    /// `bound − error` for `ℓ = 0, 1, …`; negative entries are violations.
    pub slack: Vec<f64>,
    /// `true` unless the guarantee's preconditions were confirmed.
    pub advisory: bool,
}

impl EnvelopeReport {
    /// Marks the report binding when the measured `δ4k` is at most
    /// [`ENVELOPE_DELTA`] and both projections were exact.
    pub fn with_preconditions(mut self, measured_delta4k: f64, exhaustive_backends: bool) -> Self {
        self.advisory = !(measured_delta4k <= ENVELOPE_DELTA && exhaustive_backends);
        self
    }
}

/// Per-iteration check of the geometric decay envelope. Rounding of
/// `1e-12·‖x‖` is tolerated.
pub fn corollary1_envelope(trace: &RecoveryTrace, x_true: &[C64], noise_norm: f64) -> EnvelopeReport {
    let x_norm = norm(x_true);
    let floor = ENVELOPE_NOISE_FACTOR * noise_norm;
    let mut slack = vec![floor];
    slack.extend(trace.records.iter().map(|r| {
        let bound = x_norm * 0.5f64.powi(r.iteration as i32) + floor;
        bound - dist(x_true, &r.estimate)
    }));
    let tol = 1e-12 * x_norm.max(noise_norm);
    EnvelopeReport {
        holds: slack.iter().all(|&s| s >= -tol),
        slack,
        advisory: true,
    }
}

/// Outcome of the upper-RIP tail inequality
/// `‖Az‖ ≤ √(1+δ)(‖z‖ + ‖z‖₁/√k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
}

pub fn upper_rip_tail_check(a: &crate::linalg::Matrix, k: usize, z: &[C64], delta_k: f64) -> Result<TailCheck> {
    if z.len() != a.cols() {
        return Err(Error::invalid("vector length does not match the operator"));
    }
    if k == 0 || !(delta_k >= 0.0) {
        return Err(Error::invalid("need k >= 1 and delta_k >= 0"));
    }
    let lhs = norm(&a.mul_vec(z));
    let rhs = (1.0 + delta_k).sqrt() * (norm(z) + crate::linalg::norm_l1(z) / (k as f64).sqrt());
    Ok(TailCheck {
        holds: lhs <= rhs,
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn reference_constants() {
        let t = theorem1_constants(0.0, 0.0, 0.0).unwrap();
        assert_eq!((t.c1, t.c2), (0.0, 8.0));
        let t = theorem1_constants(0.029, 0.1, 1.0).unwrap();
        assert!(t.c1 <= 0.5 && t.c2 <= 12.7);
        assert!(t.contracts());
        assert!(theorem1_constants(1.0, 0.0, 0.0).is_err());
        assert!(theorem1_constants(0.1, -1.0, 0.0).is_err());
    }

    #[test]
    fn tail_check_basics() {
        let a = Matrix::identity(3);
        let zero = [C64::new(0.0, 0.0); 3];
        let t = upper_rip_tail_check(&a, 1, &zero, 0.0).unwrap();
        assert!(t.holds && t.slack == 0.0);
        let e = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let t = upper_rip_tail_check(&a, 1, &e, 0.1).unwrap();
        assert!(t.holds && (t.lhs - 1.0).abs() < 1e-15 && (t.rhs - 2.0 * 1.1f64.sqrt()).abs() < 1e-15);
    }
}
