//! A single end-to-end recovery with its iteration trace.

use serde_json::{json, Value};

use sscosamp::analysis::snr_db;
use sscosamp::linalg::dist;
use sscosamp::projections::ProjectionBackend;
use sscosamp::recovery::RecoveryTrace;

use crate::config::{Algorithm, ConfigError, ConfigResult, KeyValues, Scenario};
use crate::error::BenchResult;
use crate::format::{fmt_f64, json_f64};
use crate::scenario::{run_algorithm, trial_seed, Instance, RunParams, ScenarioSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct RecoverConfig {
    pub spec: ScenarioSpec,
    pub m: usize,
    pub algorithm: Algorithm,
    pub noise_norm: f64,
    pub max_iters: usize,
    pub tikhonov_factor: f64,
    pub master_seed: u64,
}

pub const RECOVER_KEYS: &[&str] = &[
    "scenario",
    "n",
    "d",
    "k",
    "m",
    "algorithm",
    "noise_norm",
    "max_iters",
    "min_gap",
    "cyclic",
    "scale",
    "tikhonov_factor",
    "master_seed",
];

impl Default for RecoverConfig {
    /// Separated two-sparse signal in a 4× overcomplete DFT of length 32,
    /// sixteen measurements, SSCoSaMP with OMP projections.
    fn default() -> Self {
        RecoverConfig {
            spec: ScenarioSpec {
                scenario: Scenario::DftSeparated,
                n: 32,
                d: 128,
                k: 2,
                min_gap: 8,
                cyclic: true,
                scale: 100.0,
            },
            m: 16,
            algorithm: Algorithm::SsCosamp(ProjectionBackend::Omp),
            noise_norm: 0.0,
            max_iters: 50,
            tikhonov_factor: 10.0,
            master_seed: 0,
        }
    }
}

impl RecoverConfig {
    pub fn from_key_values(kv: &KeyValues) -> ConfigResult<Self> {
        kv.check_keys(RECOVER_KEYS)?;
        let base = RecoverConfig::default();
        let scenario: Scenario = kv.get_or("scenario", base.spec.scenario)?;
        let n = kv.get_or("n", base.spec.n)?;
        let default_d = if scenario == Scenario::RescaledIdentity { n } else { 4 * n };
        let cfg = RecoverConfig {
            spec: ScenarioSpec {
                scenario,
                n,
                d: kv.get_or("d", default_d)?,
                k: kv.get_or("k", base.spec.k)?,
                min_gap: kv.get_or("min_gap", base.spec.min_gap)?,
                cyclic: kv.get_or("cyclic", base.spec.cyclic)?,
                scale: kv.get_or("scale", base.spec.scale)?,
            },
            m: kv.get_or("m", base.m)?,
            algorithm: kv.get_or("algorithm", base.algorithm)?,
            noise_norm: kv.get_or("noise_norm", base.noise_norm)?,
            max_iters: kv.get_or("max_iters", scenario.default_max_iters())?,
            tikhonov_factor: kv.get_or("tikhonov_factor", base.tikhonov_factor)?,
            master_seed: kv.get_or("master_seed", base.master_seed)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> ConfigResult<()> {
        let s = &self.spec;
        if self.m == 0 || self.m > s.n || s.k == 0 || s.k > s.d || self.max_iters == 0 {
            return Err(ConfigError("need 1 <= m <= n, 1 <= k <= d and max_iters >= 1".into()));
        }
        let dims_ok = match s.scenario {
            Scenario::RescaledIdentity => s.d == s.n && s.n % 2 == 0,
            _ => s.n >= 2 && s.d % s.n == 0,
        };
        if !dims_ok {
            return Err(ConfigError("dictionary dimensions do not fit the scenario".into()));
        }
        if !(self.noise_norm >= 0.0) || !(self.tikhonov_factor > 0.0) {
            return Err(ConfigError("noise_norm and tikhonov_factor must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RecoverOutcome {
    pub algorithm: String,
    pub seed: u64,
    pub snr_db: f64,
    pub x_true: Vec<sscosamp::C64>,
    pub trace: RecoveryTrace,
}

impl RecoverOutcome {
    /// Trace rows `iter,residual_norm,error_to_truth,support`.
    pub fn csv(&self) -> String {
        self.trace.to_csv(Some(&self.x_true))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algorithm": self.algorithm,
            "seed": self.seed,
            "snr_db": json_f64(self.snr_db),
            "iterations": self.trace.iterations_run,
            "stop_reason": self.trace.stop_reason.as_str(),
            "records": self.trace.records.iter().map(|r| json!({
                "iter": r.iteration,
                "residual_norm": json_f64(r.residual_norm),
                "error_to_truth": json_f64(dist(&self.x_true, &r.estimate)),
                "support": r.pruned_support.as_slice(),
            })).collect::<Vec<_>>(),
        })
    }

    /// One-line summary for the terminal.
    pub fn summary_line(&self) -> String {
        format!(
            "algorithm={} seed={} iterations={} stop_reason={} snr_db={}",
            self.algorithm,
            self.seed,
            self.trace.iterations_run,
            self.trace.stop_reason.as_str(),
            fmt_f64(self.snr_db)
        )
    }
}

/// Draws the instance for trial 0 at the configured `m` and runs the
/// configured algorithm on it.
pub fn run_recover(cfg: &RecoverConfig) -> BenchResult<RecoverOutcome> {
    cfg.validate()?;
    let dict = cfg.spec.dictionary()?;
    let seed = trial_seed(cfg.master_seed, cfg.spec.scenario, cfg.m, 0);
    let inst = Instance::draw(&cfg.spec, &dict, cfg.m, cfg.noise_norm, seed)?;
    let params = RunParams {
        k: cfg.spec.k,
        max_iters: cfg.max_iters,
        tikhonov_factor: cfg.tikhonov_factor,
    };
    let trace = run_algorithm(&cfg.algorithm, &dict, &inst, &params)?;
    Ok(RecoverOutcome {
        algorithm: cfg.algorithm.name(),
        seed,
        snr_db: snr_db(&inst.x, &trace.estimate)?,
        x_true: inst.x,
        trace,
    })
}
