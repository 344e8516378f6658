use crate::error::{Error, Result};
use crate::linalg::{all_finite, dist, norm, ridge_solve, sub, C64};
use crate::model::{Dictionary, Measurements, SensingMatrix};
use crate::projections::{project_support, ProjectionBackend};

use super::{IterationRecord, RecoveryTrace, StopReason, RIDGE_TOL};

pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-12;
pub const DEFAULT_STALL_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct SsCosampConfig {
    pub k: usize,
    /// Backend for `Ω = S_D(h, 2k)`.
    pub identify_backend: ProjectionBackend,
    /// Backend for `Γ = S_D(x̃, k)`.
    pub prune_backend: ProjectionBackend,
    pub max_iters: usize,
    pub residual_tol: f64,
    pub stall_tol: f64,
    /// Bound on the coefficient norm in the update step.
    pub tikhonov_norm_bound: f64,
}

impl SsCosampConfig {
    /// Same backend for both steps and default stopping rules.
    pub fn new(k: usize, backend: ProjectionBackend, tikhonov_norm_bound: f64) -> Self {
        SsCosampConfig {
            k,
            identify_backend: backend,
            prune_backend: backend,
            max_iters: DEFAULT_MAX_ITERS,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            stall_tol: DEFAULT_STALL_TOL,
            tikhonov_norm_bound,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("sparsity k must be at least 1"));
        }
        if self.max_iters == 0 {
            return Err(Error::invalid("max_iters must be at least 1"));
        }
        if !(self.residual_tol >= 0.0) || !(self.stall_tol >= 0.0) {
            return Err(Error::invalid("tolerances must be non-negative"));
        }
        if !(self.tikhonov_norm_bound > 0.0) {
            return Err(Error::invalid("Tikhonov norm bound must be positive"));
        }
        self.identify_backend.validate()?;
        self.prune_backend.validate()
    }
}

pub(crate) fn check_dims(a: &SensingMatrix, dict: &Dictionary, y: &[C64], k: usize) -> Result<()> {
    if a.n() != dict.n() {
        return Err(Error::invalid(format!(
            "sensing matrix has {} columns, dictionary has {} rows",
            a.n(),
            dict.n()
        )));
    }
    if y.len() != a.m() {
        return Err(Error::invalid(format!(
            "measurement vector has length {}, sensing matrix has {} rows",
            y.len(),
            a.m()
        )));
    }
    if k > dict.d() {
        return Err(Error::invalid(format!("sparsity {k} exceeds the number of atoms {}", dict.d())));
    }
    if !all_finite(y) {
        return Err(Error::invalid("measurements must be finite"));
    }
    Ok(())
}

/// Signal Space CoSaMP.
pub fn sscosamp(
    a: &SensingMatrix,
    dict: &Dictionary,
    meas: &Measurements,
    cfg: &SsCosampConfig,
) -> Result<RecoveryTrace> {
    cfg.validate()?;
    let y = &meas.y;
    check_dims(a, dict, y, cfg.k)?;
    let k = cfg.k;
    let identify_size = (2 * k).min(dict.d());
    let y_norm = norm(y);

    let mut x = vec![C64::new(0.0, 0.0); dict.n()];
    let mut residual = y.clone();
    let mut gamma = crate::model::SupportSet::empty();
    let mut records = Vec::new();

    for iteration in 1..=cfg.max_iters {
        let step = || -> Result<(IterationRecord, Vec<C64>)> {
            let h = a.adjoint_apply(&residual);
            let omega = project_support(&cfg.identify_backend, dict, &h, identify_size)?;
            let merged = omega.union(&gamma);
            let d_t = dict.columns(&merged);
            let beta = ridge_solve(&a.matrix().matmul(&d_t), y, cfg.tikhonov_norm_bound, RIDGE_TOL)?.coeffs;
            let intermediate = d_t.mul_vec(&beta);
            if !all_finite(&intermediate) {
                return Err(Error::numerical("non-finite intermediate estimate"));
            }
            let pruned = project_support(&cfg.prune_backend, dict, &intermediate, k)?;
            let estimate = dict.projector(&pruned)?.apply(&intermediate)?;
            let r = sub(y, &a.apply(&estimate));
            if !all_finite(&estimate) || !all_finite(&r) {
                return Err(Error::numerical("non-finite estimate"));
            }
            let record = IterationRecord {
                iteration,
                proxy_norm: norm(&h),
                identify_support: omega,
                merged_support: merged,
                intermediate,
                pruned_support: pruned,
                residual_norm: norm(&r),
                estimate,
            };
            Ok((record, r))
        };
        let (record, r) = step().map_err(|e| e.at_iteration(iteration))?;

        let change = dist(&record.estimate, &x);
        let previous_norm = norm(&x);
        x.clone_from(&record.estimate);
        residual = r;
        gamma = record.pruned_support.clone();
        let residual_norm = record.residual_norm;
        records.push(record);

        let stop = if residual_norm <= cfg.residual_tol * y_norm {
            Some(StopReason::ResidualTol)
        } else if change <= cfg.stall_tol * previous_norm {
            Some(StopReason::Stall)
        } else if iteration == cfg.max_iters {
            Some(StopReason::MaxIters)
        } else {
            None
        };
        if let Some(stop_reason) = stop {
            return Ok(RecoveryTrace {
                algorithm: "sscosamp".into(),
                iterations_run: records.len(),
                records,
                estimate: x,
                stop_reason,
            });
        }
    }
    unreachable!("the loop returns at max_iters")
}
