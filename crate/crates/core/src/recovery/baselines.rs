use crate::error::{Error, Result};
use crate::linalg::svd::Svd;
use crate::linalg::{all_finite, dist, norm, ridge_solve, top_k_indices, Matrix, C64};
use crate::model::{Dictionary, Measurements, SensingMatrix, SupportSet};
use crate::projections::{basis_pursuit, L1Params};

use super::sscosamp::{check_dims, DEFAULT_RESIDUAL_TOL, DEFAULT_STALL_TOL};
use super::{IterationRecord, RecoveryTrace, StopReason, RIDGE_TOL};

fn synthesize_on(dict: &Dictionary, support: &[usize], coeffs: &[C64]) -> Vec<C64> {
    let mut x = vec![C64::new(0.0, 0.0); dict.n()];
    for (&j, &c) in support.iter().zip(coeffs) {
        crate::linalg::axpy(c, dict.matrix().col(j), &mut x);
    }
    x
}

fn residual_of(phi: &Matrix, support: &[usize], coeffs: &[C64], y: &[C64]) -> Vec<C64> {
    let mut r = y.to_vec();
    for (&j, &c) in support.iter().zip(coeffs) {
        crate::linalg::axpy(-c, phi.col(j), &mut r);
    }
    r
}

/// CoSaMP on the effective dictionary `Φ = A D`, with identification and
/// pruning by unnormalized coefficient magnitudes and a norm-constrained
/// least-squares update. Returns `x̂ = D α̂`.
pub fn cosamp_baseline(
    a: &SensingMatrix,
    dict: &Dictionary,
    meas: &Measurements,
    k: usize,
    max_iters: usize,
    norm_bound: f64,
) -> Result<RecoveryTrace> {
    let y = &meas.y;
    check_dims(a, dict, y, k)?;
    if k == 0 || max_iters == 0 {
        return Err(Error::invalid("k and max_iters must be at least 1"));
    }
    if !(norm_bound > 0.0) {
        return Err(Error::invalid("norm bound must be positive"));
    }
    let phi = a.matrix().matmul(dict.matrix());
    let d = dict.d();
    let y_norm = norm(y);
    let mut residual = y.clone();
    let mut gamma: Vec<usize> = Vec::new();
    let mut x = vec![C64::new(0.0, 0.0); dict.n()];
    let mut records = Vec::new();

    for iteration in 1..=max_iters {
        let h = phi.adjoint_mul_vec(&residual);
        let mags: Vec<f64> = h.iter().map(|v| v.norm()).collect();
        let omega = top_k_indices(&mags, (2 * k).min(d));
        let mut merged = omega.clone();
        merged.extend_from_slice(&gamma);
        merged.sort_unstable();
        merged.dedup();
        let b = ridge_solve(&phi.select_columns(&merged), y, norm_bound, RIDGE_TOL)
            .map_err(|e| e.at_iteration(iteration))?
            .coeffs;
        let b_mags: Vec<f64> = b.iter().map(|v| v.norm()).collect();
        let keep = top_k_indices(&b_mags, k);
        gamma = keep.iter().map(|&i| merged[i]).collect();
        let alpha: Vec<C64> = keep.iter().map(|&i| b[i]).collect();
        residual = residual_of(&phi, &gamma, &alpha, y);
        let estimate = synthesize_on(dict, &gamma, &alpha);
        if !all_finite(&estimate) || !all_finite(&residual) {
            return Err(Error::numerical("non-finite estimate").at_iteration(iteration));
        }
        let change = dist(&estimate, &x);
        let previous_norm = norm(&x);
        x.clone_from(&estimate);
        let residual_norm = norm(&residual);
        records.push(IterationRecord {
            iteration,
            proxy_norm: norm(&h),
            identify_support: SupportSet::from_unsorted(omega),
            intermediate: synthesize_on(dict, &merged, &b),
            merged_support: SupportSet::from_unsorted(merged),
            pruned_support: SupportSet::from_unsorted(gamma.clone()),
            estimate,
            residual_norm,
        });
        let stop = if residual_norm <= DEFAULT_RESIDUAL_TOL * y_norm {
            Some(StopReason::ResidualTol)
        } else if change <= DEFAULT_STALL_TOL * previous_norm {
            Some(StopReason::Stall)
        } else if iteration == max_iters {
            Some(StopReason::MaxIters)
        } else {
            None
        };
        if let Some(stop_reason) = stop {
            return Ok(RecoveryTrace {
                algorithm: "cosamp".into(),
                iterations_run: records.len(),
                records,
                estimate: x,
                stop_reason,
            });
        }
    }
    unreachable!("the loop returns at max_iters")
}

/// Options for [`omp_baseline_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmpOptions {
    /// Score atoms of `A D` by `|⟨φⱼ, r⟩| / ‖φⱼ‖` instead of `|⟨φⱼ, r⟩|`.
    pub normalize: bool,
    /// Coefficient norm bound of each refit; unbounded by default.
    pub norm_bound: f64,
}

impl Default for OmpOptions {
    fn default() -> Self {
        OmpOptions {
            normalize: true,
            norm_bound: f64::INFINITY,
        }
    }
}

/// OMP on `Φ = A D` with normalized scores and an unbounded refit.
pub fn omp_baseline(a: &SensingMatrix, dict: &Dictionary, meas: &Measurements, k: usize) -> Result<RecoveryTrace> {
    omp_baseline_with(a, dict, meas, k, &OmpOptions::default())
}

/// `k` greedy steps on `Φ = A D`; each step adds the best-scoring
/// unselected atom and refits all selected coefficients. Returns
/// `x̂ = D α̂`.
pub fn omp_baseline_with(
    a: &SensingMatrix,
    dict: &Dictionary,
    meas: &Measurements,
    k: usize,
    opts: &OmpOptions,
) -> Result<RecoveryTrace> {
    let y = &meas.y;
    check_dims(a, dict, y, k)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if !(opts.norm_bound > 0.0) {
        return Err(Error::invalid("norm bound must be positive"));
    }
    let phi = a.matrix().matmul(dict.matrix());
    let weights: Vec<f64> = if opts.normalize {
        phi.column_norms()
            .into_iter()
            .map(|c| if c > 0.0 { 1.0 / c } else { 0.0 })
            .collect()
    } else {
        vec![1.0; dict.d()]
    };
    let mut selected: Vec<usize> = Vec::with_capacity(k);
    let mut residual = y.clone();
    let mut records = Vec::with_capacity(k);
    let mut x = vec![C64::new(0.0, 0.0); dict.n()];

    for iteration in 1..=k {
        let h = phi.adjoint_mul_vec(&residual);
        let mut best = usize::MAX;
        let mut best_score = f64::NEG_INFINITY;
        for (j, (c, w)) in h.iter().zip(&weights).enumerate() {
            let s = c.norm() * w;
            if s > best_score && !selected.contains(&j) {
                best = j;
                best_score = s;
            }
        }
        selected.push(best);
        let mut support = selected.clone();
        support.sort_unstable();
        let coeffs = ridge_solve(&phi.select_columns(&support), y, opts.norm_bound, RIDGE_TOL)
            .map_err(|e| e.at_iteration(iteration))?
            .coeffs;
        residual = residual_of(&phi, &support, &coeffs, y);
        x = synthesize_on(dict, &support, &coeffs);
        if !all_finite(&x) {
            return Err(Error::numerical("non-finite estimate").at_iteration(iteration));
        }
        let support = SupportSet::from_unsorted(support);
        records.push(IterationRecord {
            iteration,
            proxy_norm: norm(&h),
            identify_support: SupportSet::from_unsorted(vec![best]),
            merged_support: support.clone(),
            intermediate: x.clone(),
            pruned_support: support,
            estimate: x.clone(),
            residual_norm: norm(&residual),
        });
    }
    Ok(RecoveryTrace {
        algorithm: "omp".into(),
        iterations_run: records.len(),
        records,
        estimate: x,
        stop_reason: StopReason::Completed,
    })
}

/// Options for [`l1_baseline_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1BaselineOptions {
    pub solver: L1Params,
    /// Absolute residual-ball radius; `solver.sigma_rel · ‖y‖` when `None`.
    pub sigma: Option<f64>,
    /// Entries below `magnitude_floor · max|α′|` are not eligible for the support.
    pub magnitude_floor: f64,
    /// Coefficient norm bound of the debiasing fit; unbounded by default.
    pub norm_bound: f64,
}

impl Default for L1BaselineOptions {
    fn default() -> Self {
        L1BaselineOptions {
            solver: L1Params::default(),
            sigma: None,
            magnitude_floor: 1e-9,
            norm_bound: f64::INFINITY,
        }
    }
}

/// Basis pursuit on `A D` followed by a debiasing least-squares fit on the
/// `k` largest coefficients. `solver_tol` is the solver's relative
/// stopping tolerance.
pub fn l1_baseline(
    a: &SensingMatrix,
    dict: &Dictionary,
    meas: &Measurements,
    k: usize,
    solver_tol: f64,
) -> Result<RecoveryTrace> {
    let mut opts = L1BaselineOptions::default();
    opts.solver.tol = solver_tol;
    l1_baseline_with(a, dict, meas, k, &opts)
}

pub fn l1_baseline_with(
    a: &SensingMatrix,
    dict: &Dictionary,
    meas: &Measurements,
    k: usize,
    opts: &L1BaselineOptions,
) -> Result<RecoveryTrace> {
    let y = &meas.y;
    check_dims(a, dict, y, k)?;
    if !(opts.norm_bound > 0.0) || !(opts.magnitude_floor >= 0.0) {
        return Err(Error::invalid("ℓ1 baseline options must be positive"));
    }
    let phi = a.matrix().matmul(dict.matrix());
    let svd = Svd::new(&phi)?;
    let sigma = opts.sigma.unwrap_or(opts.solver.sigma_rel * norm(y));
    let sol = basis_pursuit(&phi, &svd, y, sigma, &opts.solver)?;
    let mags: Vec<f64> = sol.coeffs.iter().map(|v| v.norm()).collect();
    let peak = mags.iter().copied().fold(0.0, f64::max);
    let floor = opts.magnitude_floor * peak;
    let eligible: Vec<f64> = mags.iter().map(|&m| if m > floor && m > 0.0 { m } else { 0.0 }).collect();
    let count = eligible.iter().filter(|&&m| m > 0.0).count().min(k);
    let support = top_k_indices(&eligible, count);

    let (estimate, residual) = if support.is_empty() {
        (vec![C64::new(0.0, 0.0); dict.n()], y.clone())
    } else {
        let coeffs = ridge_solve(&phi.select_columns(&support), y, opts.norm_bound, RIDGE_TOL)?.coeffs;
        (
            synthesize_on(dict, &support, &coeffs),
            residual_of(&phi, &support, &coeffs, y),
        )
    };
    if !all_finite(&estimate) {
        return Err(Error::numerical("non-finite estimate"));
    }
    let support = SupportSet::from_unsorted(support);
    let record = IterationRecord {
        iteration: 1,
        proxy_norm: norm(&a.adjoint_apply(y)),
        identify_support: support.clone(),
        merged_support: support.clone(),
        intermediate: synthesize_on(dict, &(0..dict.d()).collect::<Vec<_>>(), &sol.coeffs),
        pruned_support: support,
        estimate: estimate.clone(),
        residual_norm: norm(&residual),
    };
    Ok(RecoveryTrace {
        algorithm: "l1".into(),
        records: vec![record],
        estimate,
        iterations_run: 1,
        stop_reason: StopReason::Completed,
    })
}
