//! Signal Space CoSaMP and the baseline recovery algorithms. Every
//! algorithm returns a [`RecoveryTrace`] with one record per iteration.

mod baselines;
mod sscosamp;
mod trace;

pub use baselines::{
    cosamp_baseline, l1_baseline, l1_baseline_with, omp_baseline, omp_baseline_with, L1BaselineOptions,
    OmpOptions,
};
pub use sscosamp::{sscosamp, SsCosampConfig, DEFAULT_MAX_ITERS, DEFAULT_RESIDUAL_TOL, DEFAULT_STALL_TOL};
pub use trace::{IterationRecord, RecoveryTrace, StopReason};

/// Relative slack allowed on the norm bound of every update solve.
pub const RIDGE_TOL: f64 = 1e-10;
