//! Monte Carlo sweeps over the number of measurements.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use sscosamp::analysis::snr_db;
use sscosamp::model::Dictionary;

use crate::config::SweepConfig;
use crate::error::BenchResult;
use crate::format::{csv, fmt_f64, fmt_opt, json_f64, json_opt};
use crate::scenario::{run_algorithm, trial_seed, Instance, RunParams, ScenarioSpec};

/// SNR values above this are clipped when averaging, so that exact
/// recoveries do not make the mean infinite.
pub const SNR_MEAN_CAP_DB: f64 = 300.0;

pub const TRIAL_HEADER: &[&str] = &[
    "scenario",
    "algorithm",
    "m",
    "trial",
    "seed",
    "snr_db",
    "success",
    "iterations",
    "wall_ms",
    "stop_reason",
];

pub const SUMMARY_HEADER: &[&str] = &[
    "algorithm",
    "m",
    "trials",
    "successes",
    "success_rate",
    "mean_snr_db",
    "mean_iterations",
    "mean_wall_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    /// Record wall-clock times. Off by default so that output is
    /// byte-reproducible.
    pub timing: bool,
}

/// One algorithm run on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub scenario: String,
    pub algorithm: String,
    pub m: usize,
    pub trial: usize,
    pub seed: u64,
    /// NaN when the run failed.
    pub snr_db: f64,
    pub success: bool,
    pub iterations: usize,
    pub wall_ms: Option<f64>,
    /// The stop reason, or `numerical_failure` / `invalid_input` on error.
    pub stop_reason: String,
}

impl TrialRow {
    pub fn failed(&self) -> bool {
        self.snr_db.is_nan()
    }

    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.scenario.clone(),
            self.algorithm.clone(),
            self.m.to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            fmt_f64(self.snr_db),
            u8::from(self.success).to_string(),
            self.iterations.to_string(),
            fmt_opt(self.wall_ms),
            self.stop_reason.clone(),
        ]
    }

    fn to_json(&self) -> Value {
        json!({
            "scenario": self.scenario,
            "algorithm": self.algorithm,
            "m": self.m,
            "trial": self.trial,
            "seed": self.seed,
            "snr_db": json_f64(self.snr_db),
            "success": self.success,
            "iterations": self.iterations,
            "wall_ms": json_opt(self.wall_ms),
            "stop_reason": self.stop_reason,
        })
    }
}

/// Aggregate over the trials of one `(algorithm, m)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub m: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Mean over runs that did not fail, with SNRs clipped at
    /// [`SNR_MEAN_CAP_DB`]; NaN if every run failed.
    pub mean_snr_db: f64,
    pub mean_iterations: f64,
    pub mean_wall_ms: Option<f64>,
}

impl SummaryRow {
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.algorithm.clone(),
            self.m.to_string(),
            self.trials.to_string(),
            self.successes.to_string(),
            fmt_f64(self.success_rate),
            fmt_f64(self.mean_snr_db),
            fmt_f64(self.mean_iterations),
            fmt_opt(self.mean_wall_ms),
        ]
    }

    fn to_json(&self) -> Value {
        json!({
            "algorithm": self.algorithm,
            "m": self.m,
            "trials": self.trials,
            "successes": self.successes,
            "success_rate": json_f64(self.success_rate),
            "mean_snr_db": json_f64(self.mean_snr_db),
            "mean_iterations": json_f64(self.mean_iterations),
            "mean_wall_ms": json_opt(self.mean_wall_ms),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Ordered by `m`, trial, then the configured algorithm order.
    pub trials: Vec<TrialRow>,
    /// Ordered by the configured algorithm order, then `m`.
    pub summary: Vec<SummaryRow>,
}

impl SweepResult {
    pub fn trials_csv(&self) -> String {
        csv(TRIAL_HEADER, self.trials.iter().map(TrialRow::csv_fields))
    }

    pub fn summary_csv(&self) -> String {
        csv(SUMMARY_HEADER, self.summary.iter().map(SummaryRow::csv_fields))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials.iter().map(TrialRow::to_json).collect::<Vec<_>>(),
            "summary": self.summary.iter().map(SummaryRow::to_json).collect::<Vec<_>>(),
        })
    }

    /// The summary row of `algorithm` at `m`.
    pub fn point(&self, algorithm: &str, m: usize) -> Option<&SummaryRow> {
        self.summary.iter().find(|r| r.algorithm == algorithm && r.m == m)
    }
}

pub fn scenario_spec(cfg: &SweepConfig) -> ScenarioSpec {
    ScenarioSpec {
        scenario: cfg.scenario,
        n: cfg.n,
        d: cfg.d,
        k: cfg.k,
        min_gap: cfg.min_gap,
        cyclic: cfg.cyclic,
        scale: cfg.scale,
    }
}

/// Runs every configured algorithm on `trials_per_point` instances per grid
/// point. Trials run in parallel; results are gathered in a fixed order.
/// Failed algorithm runs are recorded as unsuccessful rows; failures to
/// draw an instance abort the sweep.
pub fn run_sweep(cfg: &SweepConfig, opts: SweepOptions) -> BenchResult<SweepResult> {
    cfg.validate()?;
    let spec = scenario_spec(cfg);
    let dict = spec.dictionary()?;
    let params = RunParams {
        k: cfg.k,
        max_iters: cfg.max_iters,
        tikhonov_factor: cfg.tikhonov_factor,
    };
    let jobs: Vec<(usize, usize)> = cfg
        .m_grid
        .iter()
        .flat_map(|&m| (0..cfg.trials_per_point).map(move |t| (m, t)))
        .collect();
    let per_job: Vec<Vec<TrialRow>> = jobs
        .par_iter()
        .map(|&(m, trial)| run_trial(cfg, &spec, &dict, &params, m, trial, opts))
        .collect::<BenchResult<_>>()?;
    let trials: Vec<TrialRow> = per_job.into_iter().flatten().collect();
    let summary = summarize(cfg, &trials);
    Ok(SweepResult { trials, summary })
}

fn run_trial(
    cfg: &SweepConfig,
    spec: &ScenarioSpec,
    dict: &Dictionary,
    params: &RunParams,
    m: usize,
    trial: usize,
    opts: SweepOptions,
) -> BenchResult<Vec<TrialRow>> {
    let seed = trial_seed(cfg.master_seed, cfg.scenario, m, trial);
    let inst = Instance::draw(spec, dict, m, cfg.noise_norm, seed)?;
    Ok(cfg
        .algorithms
        .iter()
        .map(|alg| {
            let start = Instant::now();
            let outcome = run_algorithm(alg, dict, &inst, params);
            let wall_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            let (snr, iterations, stop_reason) = match outcome.and_then(|t| {
                let snr = snr_db(&inst.x, &t.estimate)?;
                Ok((snr, t.iterations_run, t.stop_reason.as_str().to_string()))
            }) {
                Ok(v) => v,
                Err(e) if e.is_numerical() => (f64::NAN, 0, "numerical_failure".into()),
                Err(_) => (f64::NAN, 0, "invalid_input".into()),
            };
            TrialRow {
                scenario: cfg.scenario.name().into(),
                algorithm: alg.name(),
                m,
                trial,
                seed,
                snr_db: snr,
                success: snr >= cfg.snr_threshold_db,
                iterations,
                wall_ms,
                stop_reason,
            }
        })
        .collect())
}

/// Aggregates per-trial rows; recomputable from the rows alone.
pub fn summarize(cfg: &SweepConfig, trials: &[TrialRow]) -> Vec<SummaryRow> {
    let mut out = Vec::new();
    for alg in &cfg.algorithms {
        let name = alg.name();
        for &m in &cfg.m_grid {
            let rows: Vec<&TrialRow> = trials.iter().filter(|r| r.algorithm == name && r.m == m).collect();
            let ok: Vec<&&TrialRow> = rows.iter().filter(|r| !r.failed()).collect();
            let successes = rows.iter().filter(|r| r.success).count();
            let mean = |f: &dyn Fn(&TrialRow) -> f64| -> f64 {
                if ok.is_empty() {
                    f64::NAN
                } else {
                    ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64
                }
            };
            let timed: Vec<f64> = rows.iter().filter_map(|r| r.wall_ms).collect();
            out.push(SummaryRow {
                algorithm: name.clone(),
                m,
                trials: rows.len(),
                successes,
                success_rate: successes as f64 / rows.len() as f64,
                mean_snr_db: mean(&|r| r.snr_db.min(SNR_MEAN_CAP_DB)),
                mean_iterations: mean(&|r| r.iterations as f64),
                mean_wall_ms: (!timed.is_empty()).then(|| timed.iter().sum::<f64>() / timed.len() as f64),
            });
        }
    }
    out
}
