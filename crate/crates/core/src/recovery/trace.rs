use std::fmt::{self, Write as _};

use crate::linalg::{dist, C64};
use crate::model::SupportSet;

/// Why an iterative recovery stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// `‖r‖ ≤ residual_tol · ‖y‖`.
    ResidualTol,
    /// `‖xˡ⁺¹ − xˡ‖ ≤ stall_tol · ‖xˡ‖`.
    Stall,
    /// The iteration budget was exhausted.
    MaxIters,
    /// A fixed-length method (OMP, ℓ1 with debiasing) ran to completion.
    Completed,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::ResidualTol => "residual_tol",
            StopReason::Stall => "stall",
            StopReason::MaxIters => "max_iters",
            StopReason::Completed => "completed",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// State after one iteration.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// One-based iteration index `ℓ`.
    pub iteration: usize,
    /// `‖h‖` for the proxy `h = Aᴴr`.
    pub proxy_norm: f64,
    /// `Ω`.
    pub identify_support: SupportSet,
    /// `T = Ω ∪ Γ`.
    pub merged_support: SupportSet,
    /// `x̃`, the norm-constrained fit over `R(D_T)`.
    pub intermediate: Vec<C64>,
    /// `Γ`.
    pub pruned_support: SupportSet,
    /// `xˡ`.
    pub estimate: Vec<C64>,
    /// `‖y − A xˡ‖`.
    pub residual_norm: f64,
}

/// Full record of a recovery run.
#[derive(Debug, Clone)]
pub struct RecoveryTrace {
    pub algorithm: String,
    pub records: Vec<IterationRecord>,
    /// `x̂`.
    pub estimate: Vec<C64>,
    pub iterations_run: usize,
    pub stop_reason: StopReason,
}

impl RecoveryTrace {
    /// Support of the last pruned iterate; empty if no iteration ran.
    pub fn final_support(&self) -> SupportSet {
        self.records
            .last()
            .map(|r| r.pruned_support.clone())
            .unwrap_or_default()
    }

    pub fn final_residual_norm(&self) -> Option<f64> {
        self.records.last().map(|r| r.residual_norm)
    }

    /// One row per iteration: `iter,residual_norm,error_to_truth,support`.
    /// `error_to_truth` is empty without ground truth; the support is the
    /// pruned support as a semicolon-separated list.
    pub fn to_csv(&self, x_true: Option<&[C64]>) -> String {
        let mut out = String::from("iter,residual_norm,error_to_truth,support\n");
        for r in &self.records {
            let err = match x_true {
                Some(x) if x.len() == r.estimate.len() => dist(x, &r.estimate).to_string(),
                _ => String::new(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.iteration,
                r.residual_norm,
                err,
                r.pruned_support.to_joined()
            );
        }
        out
    }
}
