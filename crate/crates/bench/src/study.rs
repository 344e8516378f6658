//! Projection-quality studies and D-RIP diagnostics.

use serde_json::{json, Value};

use sscosamp::analysis::drip_estimate;
use sscosamp::linalg::Matrix;
use sscosamp::model::{
    derive_seed, draw_gaussian_sensing, draw_sparse_coefficients, measure, tag, Dictionary, SensingMatrix,
    SupportPattern, ValueField,
};
use sscosamp::projections::exhaustive::check_cap;
use sscosamp::projections::{evaluate_projection_quality, ProjectionBackend, DEFAULT_ENUMERATION_CAP};

use crate::config::{ConfigError, ConfigResult, KeyValues};
use crate::error::BenchResult;
use crate::format::{csv, fmt_f64, json_f64};

/// Dictionary families available to the studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DictSpec {
    /// `redundancy`× overcomplete DFT; `redundancy = 1` is orthonormal.
    Dft { n: usize, redundancy: usize },
    RescaledIdentity { n: usize, scale: f64 },
}

impl DictSpec {
    fn from_key_values(kv: &KeyValues, default_n: usize, default_redundancy: usize) -> ConfigResult<Self> {
        let n = kv.get_or("n", default_n)?;
        match kv.raw("dictionary").unwrap_or("dft") {
            "dft" => Ok(DictSpec::Dft {
                n,
                redundancy: kv.get_or("redundancy", default_redundancy)?,
            }),
            "rescaled_identity" => Ok(DictSpec::RescaledIdentity {
                n,
                scale: kv.get_or("scale", 100.0)?,
            }),
            other => Err(ConfigError(format!("unknown dictionary '{other}'"))),
        }
    }

    pub fn build(&self) -> sscosamp::Result<Dictionary> {
        match *self {
            DictSpec::Dft { n, redundancy } => Dictionary::overcomplete_dft(n, redundancy),
            DictSpec::RescaledIdentity { n, scale } => Dictionary::rescaled_identity(n, scale),
        }
    }

    pub fn field(&self) -> ValueField {
        match self {
            DictSpec::Dft { .. } => ValueField::Complex,
            DictSpec::RescaledIdentity { .. } => ValueField::Real,
        }
    }
}

/// Support placement named in study configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Uniform,
    Separated,
    Clustered,
    Hybrid,
}

impl PatternKind {
    pub fn name(&self) -> &'static str {
        match self {
            PatternKind::Uniform => "uniform",
            PatternKind::Separated => "separated",
            PatternKind::Clustered => "clustered",
            PatternKind::Hybrid => "hybrid",
        }
    }

    pub fn pattern(&self, min_gap: usize, cyclic: bool) -> SupportPattern {
        match self {
            PatternKind::Uniform => SupportPattern::UniformRandom,
            PatternKind::Separated => SupportPattern::WellSeparated { min_gap, cyclic },
            PatternKind::Clustered => SupportPattern::ClusteredBlock,
            PatternKind::Hybrid => SupportPattern::Hybrid { min_gap },
        }
    }
}

impl std::str::FromStr for PatternKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> ConfigResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(PatternKind::Uniform),
            "separated" => Ok(PatternKind::Separated),
            "clustered" => Ok(PatternKind::Clustered),
            "hybrid" => Ok(PatternKind::Hybrid),
            other => Err(ConfigError(format!("unknown pattern '{other}'"))),
        }
    }
}

/// Wrapper so backend names parse with the config error type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackendName(pub ProjectionBackend);

impl std::str::FromStr for BackendName {
    type Err = ConfigError;

    fn from_str(s: &str) -> ConfigResult<Self> {
        s.parse().map(BackendName).map_err(|e: sscosamp::Error| ConfigError(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionStudyConfig {
    pub dict: DictSpec,
    pub k: usize,
    pub patterns: Vec<PatternKind>,
    pub backends: Vec<ProjectionBackend>,
    pub trials: usize,
    /// `‖e‖ / ‖Dα‖` of the perturbation added to each test signal.
    pub noise_level: f64,
    pub min_gap: usize,
    pub cyclic: bool,
    pub master_seed: u64,
}

pub const STUDY_KEYS: &[&str] = &[
    "dictionary",
    "n",
    "redundancy",
    "scale",
    "k",
    "patterns",
    "backends",
    "trials",
    "noise_level",
    "min_gap",
    "cyclic",
    "master_seed",
];

impl Default for ProjectionStudyConfig {
    /// A small coherent DFT instance with every backend.
    fn default() -> Self {
        ProjectionStudyConfig {
            dict: DictSpec::Dft { n: 8, redundancy: 2 },
            k: 2,
            patterns: vec![PatternKind::Separated, PatternKind::Clustered],
            backends: vec![
                ProjectionBackend::Threshold,
                ProjectionBackend::Omp,
                ProjectionBackend::cosamp(),
                ProjectionBackend::l1(),
                ProjectionBackend::exhaustive(),
            ],
            trials: 50,
            noise_level: 0.05,
            min_gap: 2,
            cyclic: true,
            master_seed: 0,
        }
    }
}

impl ProjectionStudyConfig {
    pub fn from_key_values(kv: &KeyValues) -> ConfigResult<Self> {
        kv.check_keys(STUDY_KEYS)?;
        let base = ProjectionStudyConfig::default();
        let cfg = ProjectionStudyConfig {
            dict: DictSpec::from_key_values(kv, 8, 2)?,
            k: kv.get_or("k", base.k)?,
            patterns: kv.list("patterns")?.unwrap_or(base.patterns),
            backends: kv
                .list::<BackendName>("backends")?
                .map(|v| v.into_iter().map(|b| b.0).collect())
                .unwrap_or(base.backends),
            trials: kv.get_or("trials", base.trials)?,
            noise_level: kv.get_or("noise_level", base.noise_level)?,
            min_gap: kv.get_or("min_gap", base.min_gap)?,
            cyclic: kv.get_or("cyclic", base.cyclic)?,
            master_seed: kv.get_or("master_seed", base.master_seed)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> ConfigResult<()> {
        if self.k == 0 || self.trials == 0 || self.patterns.is_empty() || self.backends.is_empty() {
            return Err(ConfigError("k, trials, patterns and backends must be non-empty".into()));
        }
        if !(self.noise_level >= 0.0) || !self.noise_level.is_finite() {
            return Err(ConfigError("noise_level must be finite and non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityRow {
    pub trial: usize,
    pub pattern: &'static str,
    pub backend: &'static str,
    pub seed: u64,
    pub eps1: f64,
    pub eps2: f64,
    pub opt_residual: f64,
    pub est_residual: f64,
    /// `ok`, or `numerical_failure` with the measurements set to NaN.
    pub status: &'static str,
}

impl QualityRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

pub const QUALITY_HEADER: &[&str] =
    &["trial", "pattern", "backend", "seed", "eps1", "eps2", "opt_residual", "est_residual", "status"];

pub const QUALITY_SUMMARY_HEADER: &[&str] =
    &["pattern", "backend", "trials", "failures", "median_eps1", "median_eps2", "max_eps1", "max_eps2"];

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionStudy {
    /// Ordered by pattern, trial, then backend, in configured order.
    pub rows: Vec<QualityRow>,
}

struct SummaryRow {
    pattern: &'static str,
    backend: &'static str,
    trials: usize,
    failures: usize,
    median_eps1: f64,
    median_eps2: f64,
    max_eps1: f64,
    max_eps2: f64,
}

/// Median with infinities ordered last; NaN for an empty slice.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let h = v.len() / 2;
    if v.len() % 2 == 1 {
        v[h]
    } else if v[h - 1] == v[h] {
        v[h]
    } else {
        0.5 * (v[h - 1] + v[h])
    }
}

impl ProjectionStudy {
    fn select(&self, pattern: &str, backend: &str) -> impl Iterator<Item = &QualityRow> {
        let (p, b) = (pattern.to_string(), backend.to_string());
        self.rows.iter().filter(move |r| r.pattern == p && r.backend == b)
    }

    /// Medians of `(ε1, ε2)` over the successful rows of one pattern and backend.
    pub fn median_eps(&self, pattern: &str, backend: &str) -> (f64, f64) {
        let (e1, e2): (Vec<f64>, Vec<f64>) =
            self.select(pattern, backend).filter(|r| r.is_ok()).map(|r| (r.eps1, r.eps2)).unzip();
        (median(&e1), median(&e2))
    }

    pub fn csv(&self) -> String {
        csv(
            QUALITY_HEADER,
            self.rows.iter().map(|r| {
                vec![
                    r.trial.to_string(),
                    r.pattern.into(),
                    r.backend.into(),
                    r.seed.to_string(),
                    fmt_f64(r.eps1),
                    fmt_f64(r.eps2),
                    fmt_f64(r.opt_residual),
                    fmt_f64(r.est_residual),
                    r.status.into(),
                ]
            }),
        )
    }

    fn summary_rows(&self) -> Vec<SummaryRow> {
        let mut keys: Vec<(&'static str, &'static str)> = Vec::new();
        for r in &self.rows {
            if !keys.contains(&(r.pattern, r.backend)) {
                keys.push((r.pattern, r.backend));
            }
        }
        keys.into_iter()
            .map(|(p, b)| {
                let rows: Vec<&QualityRow> = self.select(p, b).collect();
                let ok: Vec<&&QualityRow> = rows.iter().filter(|r| r.is_ok()).collect();
                let (median_eps1, median_eps2) = self.median_eps(p, b);
                let max = |f: fn(&QualityRow) -> f64| {
                    if ok.is_empty() {
                        f64::NAN
                    } else {
                        ok.iter().map(|r| f(r)).fold(0.0, f64::max)
                    }
                };
                SummaryRow {
                    pattern: p,
                    backend: b,
                    trials: rows.len(),
                    failures: rows.len() - ok.len(),
                    median_eps1,
                    median_eps2,
                    max_eps1: max(|r| r.eps1),
                    max_eps2: max(|r| r.eps2),
                }
            })
            .collect()
    }

    pub fn summary_csv(&self) -> String {
        csv(
            QUALITY_SUMMARY_HEADER,
            self.summary_rows().into_iter().map(|r| {
                vec![
                    r.pattern.into(),
                    r.backend.into(),
                    r.trials.to_string(),
                    r.failures.to_string(),
                    fmt_f64(r.median_eps1),
                    fmt_f64(r.median_eps2),
                    fmt_f64(r.max_eps1),
                    fmt_f64(r.max_eps2),
                ]
            }),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "trial": r.trial,
                "pattern": r.pattern,
                "backend": r.backend,
                "seed": r.seed,
                "eps1": json_f64(r.eps1),
                "eps2": json_f64(r.eps2),
                "opt_residual": json_f64(r.opt_residual),
                "est_residual": json_f64(r.est_residual),
                "status": r.status,
            })).collect::<Vec<_>>(),
            "summary": self.summary_rows().into_iter().map(|r| json!({
                "pattern": r.pattern,
                "backend": r.backend,
                "trials": r.trials,
                "failures": r.failures,
                "median_eps1": json_f64(r.median_eps1),
                "median_eps2": json_f64(r.median_eps2),
                "max_eps1": json_f64(r.max_eps1),
                "max_eps2": json_f64(r.max_eps2),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Measures `(ε1, ε2)` of each backend against the exhaustive optimum on
/// `z = Dα + e`, with `α` drawn from each pattern and `‖e‖` a fixed fraction
/// of `‖Dα‖`. Instances beyond the enumeration cap are refused up front.
/// A backend that fails numerically is recorded as a failed row.
pub fn run_projection_study(cfg: &ProjectionStudyConfig) -> BenchResult<ProjectionStudy> {
    cfg.validate()?;
    let dict = cfg.dict.build()?;
    if cfg.k > dict.d() {
        return Err(ConfigError(format!("k = {} exceeds the {} atoms", cfg.k, dict.d())).into());
    }
    check_cap(dict.d(), cfg.k, DEFAULT_ENUMERATION_CAP)?;
    let identity = SensingMatrix::from_matrix(Matrix::identity(dict.n()))?;
    let mut rows = Vec::new();
    for pattern in &cfg.patterns {
        for trial in 0..cfg.trials {
            let seed = derive_seed(cfg.master_seed, &[tag("projection"), tag(pattern.name()), trial as u64]);
            let alpha = draw_sparse_coefficients(
                dict.d(),
                cfg.k,
                pattern.pattern(cfg.min_gap, cfg.cyclic),
                cfg.dict.field(),
                derive_seed(seed, &[0]),
            )?;
            let x = dict.synthesize(&alpha)?;
            let noise = cfg.noise_level * sscosamp::linalg::norm(&x);
            let z = measure(&identity, &x, noise, derive_seed(seed, &[1]))?.y;
            for backend in &cfg.backends {
                let mut row = QualityRow {
                    trial,
                    pattern: pattern.name(),
                    backend: backend.name(),
                    seed,
                    eps1: f64::NAN,
                    eps2: f64::NAN,
                    opt_residual: f64::NAN,
                    est_residual: f64::NAN,
                    status: "numerical_failure",
                };
                match evaluate_projection_quality(&dict, &z, cfg.k, backend) {
                    Ok(q) => {
                        row.eps1 = q.eps1;
                        row.eps2 = q.eps2;
                        row.opt_residual = q.opt_residual;
                        row.est_residual = q.est_residual;
                        row.status = "ok";
                    }
                    Err(e) if e.is_numerical() => {}
                    Err(e) => return Err(e.into()),
                }
                rows.push(row);
            }
        }
    }
    Ok(ProjectionStudy { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DripConfig {
    pub dict: DictSpec,
    pub m_grid: Vec<usize>,
    pub k: usize,
    pub trials: usize,
    pub master_seed: u64,
}

pub const DRIP_KEYS: &[&str] = &["dictionary", "n", "redundancy", "scale", "m_grid", "k", "trials", "master_seed"];

impl Default for DripConfig {
    fn default() -> Self {
        DripConfig {
            dict: DictSpec::Dft { n: 64, redundancy: 4 },
            m_grid: vec![32],
            k: 4,
            trials: 1000,
            master_seed: 0,
        }
    }
}

impl DripConfig {
    pub fn from_key_values(kv: &KeyValues) -> ConfigResult<Self> {
        kv.check_keys(DRIP_KEYS)?;
        let base = DripConfig::default();
        let cfg = DripConfig {
            dict: DictSpec::from_key_values(kv, 64, 4)?,
            m_grid: kv.list("m_grid")?.unwrap_or(base.m_grid),
            k: kv.get_or("k", base.k)?,
            trials: kv.get_or("trials", base.trials)?,
            master_seed: kv.get_or("master_seed", base.master_seed)?,
        };
        if cfg.m_grid.is_empty() || cfg.k == 0 || cfg.trials == 0 {
            return Err(ConfigError("m_grid, k and trials must be non-empty".into()));
        }
        Ok(cfg)
    }
}

pub const DRIP_HEADER: &[&str] = &["n", "d", "m", "k", "trials", "valid_samples", "seed", "delta_lower"];

#[derive(Debug, Clone, PartialEq)]
pub struct DripRow {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub k: usize,
    pub trials: usize,
    pub valid_samples: usize,
    pub seed: u64,
    /// Sampled lower bound on the D-RIP constant.
    pub delta_lower: f64,
}

/// Sampled D-RIP lower bound for one Gaussian matrix per grid point.
pub fn run_drip(cfg: &DripConfig) -> BenchResult<Vec<DripRow>> {
    let dict = cfg.dict.build()?;
    cfg.m_grid
        .iter()
        .map(|&m| {
            let seed = derive_seed(cfg.master_seed, &[tag("drip"), m as u64]);
            let a = draw_gaussian_sensing(m, dict.n(), derive_seed(seed, &[0]))?;
            let est = drip_estimate(&a, &dict, cfg.k, cfg.trials, derive_seed(seed, &[1]))?;
            Ok(DripRow {
                n: dict.n(),
                d: dict.d(),
                m,
                k: cfg.k,
                trials: est.trials,
                valid_samples: est.valid_samples,
                seed,
                delta_lower: est.delta_lower,
            })
        })
        .collect()
}

pub fn drip_csv(rows: &[DripRow]) -> String {
    csv(
        DRIP_HEADER,
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.d.to_string(),
                r.m.to_string(),
                r.k.to_string(),
                r.trials.to_string(),
                r.valid_samples.to_string(),
                r.seed.to_string(),
                fmt_f64(r.delta_lower),
            ]
        }),
    )
}

pub fn drip_json(rows: &[DripRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "n": r.n, "d": r.d, "m": r.m, "k": r.k, "trials": r.trials,
                    "valid_samples": r.valid_samples, "seed": r.seed,
                    "delta_lower": json_f64(r.delta_lower),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_handles_infinity() {
        assert_eq!(median(&[3.0, f64::INFINITY, 1.0]), 3.0);
        assert_eq!(median(&[1.0, f64::INFINITY, f64::INFINITY, 0.0]), f64::INFINITY);
        assert_eq!(median(&[1.0, 2.0]), 1.5);
        assert!(median(&[]).is_nan());
    }

    #[test]
    fn exhaustive_rows_are_zero() {
        let cfg = ProjectionStudyConfig {
            backends: vec![ProjectionBackend::exhaustive()],
            trials: 5,
            ..Default::default()
        };
        let study = run_projection_study(&cfg).unwrap();
        assert_eq!(study.rows.len(), 10);
        assert!(study.rows.iter().all(|r| r.is_ok() && r.eps1 == 0.0 && r.eps2 == 0.0));
    }

    #[test]
    fn orthonormal_threshold_rows_are_zero() {
        let cfg = ProjectionStudyConfig {
            dict: DictSpec::Dft { n: 8, redundancy: 1 },
            patterns: vec![PatternKind::Uniform, PatternKind::Clustered],
            backends: vec![ProjectionBackend::Threshold],
            trials: 20,
            ..Default::default()
        };
        let study = run_projection_study(&cfg).unwrap();
        assert!(study.rows.iter().all(|r| r.eps1 == 0.0 && r.eps2 == 0.0));
    }

    #[test]
    fn oversized_instance_is_refused() {
        let cfg = ProjectionStudyConfig {
            dict: DictSpec::Dft { n: 64, redundancy: 4 },
            k: 8,
            ..Default::default()
        };
        let err = run_projection_study(&cfg).unwrap_err();
        assert!(matches!(err, crate::BenchError::Core(sscosamp::Error::InstanceTooLarge { .. })));
    }
}
