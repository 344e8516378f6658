//! Recovery metrics and diagnostics of the theory: SNR, empirical D-RIP
//! constants, the error-bound constants and decay envelope, the model
//! mismatch and the upper-RIP tail inequality.

mod drip;
mod metrics;
mod mismatch;
mod theory;

pub use drip::{drip_estimate, drip_exhaustive, drip_samples, support_distortion, DRipEstimate, SIGNAL_FLOOR};
pub use metrics::{snr_db, PERFECT_RECOVERY_DB};
pub use mismatch::{mismatch, mismatch_objective, MismatchMode, MismatchReport};
pub use theory::{
    corollary1_envelope, theorem1_constants, upper_rip_tail_check, EnvelopeReport, TailCheck, TheoremConstants,
    ENVELOPE_DELTA, ENVELOPE_NOISE_FACTOR,
};
