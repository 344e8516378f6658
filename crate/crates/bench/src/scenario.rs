//! Random problem instances for the benchmark scenarios.

use sscosamp::model::{
    derive_seed, draw_gaussian_sensing, draw_sparse_coefficients, measure, tag, Dictionary, Measurements,
    SensingMatrix, SparseCoefficients, SupportPattern, ValueField,
};
use sscosamp::recovery::{
    cosamp_baseline, l1_baseline_with, omp_baseline, sscosamp, L1BaselineOptions, RecoveryTrace, SsCosampConfig,
};
use sscosamp::{Result, C64};

use crate::config::{Algorithm, Scenario};

/// Sub-seed indices below a trial seed.
const SENSING_STREAM: u64 = 0;
const COEFF_STREAM: u64 = 1;
const NOISE_STREAM: u64 = 2;

/// Dictionary, support pattern and value field of a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub min_gap: usize,
    pub cyclic: bool,
    pub scale: f64,
}

impl ScenarioSpec {
    pub fn dictionary(&self) -> Result<Dictionary> {
        match self.scenario {
            Scenario::RescaledIdentity => Dictionary::rescaled_identity(self.n, self.scale),
            _ => Dictionary::overcomplete_dft(self.n, self.d / self.n),
        }
    }

    pub fn pattern(&self) -> SupportPattern {
        match self.scenario {
            Scenario::RescaledIdentity => SupportPattern::UniformRandom,
            Scenario::DftSeparated => SupportPattern::WellSeparated {
                min_gap: self.min_gap,
                cyclic: self.cyclic,
            },
            Scenario::DftClustered => SupportPattern::ClusteredBlock,
            Scenario::DftHybrid => SupportPattern::Hybrid { min_gap: self.min_gap },
        }
    }

    pub fn field(&self) -> ValueField {
        match self.scenario {
            Scenario::RescaledIdentity => ValueField::Real,
            _ => ValueField::Complex,
        }
    }
}

/// Seed of one trial: a function of the master seed, scenario, `m` and the
/// trial index only.
pub fn trial_seed(master: u64, scenario: Scenario, m: usize, trial: usize) -> u64 {
    derive_seed(master, &[tag(scenario.name()), m as u64, trial as u64])
}

/// One drawn problem: `y = A D α + e`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub a: SensingMatrix,
    pub alpha: SparseCoefficients,
    pub x: Vec<C64>,
    pub meas: Measurements,
}

impl Instance {
    pub fn draw(spec: &ScenarioSpec, dict: &Dictionary, m: usize, noise_norm: f64, seed: u64) -> Result<Self> {
        let a = draw_gaussian_sensing(m, spec.n, derive_seed(seed, &[SENSING_STREAM]))?;
        let alpha = draw_sparse_coefficients(
            dict.d(),
            spec.k,
            spec.pattern(),
            spec.field(),
            derive_seed(seed, &[COEFF_STREAM]),
        )?;
        let x = dict.synthesize(&alpha)?;
        let meas = measure(&a, &x, noise_norm, derive_seed(seed, &[NOISE_STREAM]))?;
        Ok(Instance {
            seed,
            a,
            alpha,
            x,
            meas,
        })
    }
}

/// Parameters shared by every algorithm run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunParams {
    pub k: usize,
    pub max_iters: usize,
    /// Tikhonov bound as a multiple of `‖α‖`.
    pub tikhonov_factor: f64,
}

/// Runs one algorithm on an instance. The Tikhonov bound uses the true
/// coefficient norm.
pub fn run_algorithm(alg: &Algorithm, dict: &Dictionary, inst: &Instance, p: &RunParams) -> Result<RecoveryTrace> {
    let bound = p.tikhonov_factor * inst.alpha.norm();
    match alg {
        Algorithm::SsCosamp(backend) => {
            let mut cfg = SsCosampConfig::new(p.k, *backend, bound);
            cfg.max_iters = p.max_iters;
            sscosamp(&inst.a, dict, &inst.meas, &cfg)
        }
        Algorithm::Cosamp => cosamp_baseline(&inst.a, dict, &inst.meas, p.k, p.max_iters, bound),
        Algorithm::Omp => omp_baseline(&inst.a, dict, &inst.meas, p.k),
        Algorithm::L1 => {
            let mut opts = L1BaselineOptions::default();
            if inst.meas.noise_norm > 0.0 {
                opts.sigma = Some(inst.meas.noise_norm);
            }
            l1_baseline_with(&inst.a, dict, &inst.meas, p.k, &opts)
        }
    }
}
