//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Lists are
//! comma-separated. Unknown keys are rejected so that typos surface early.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use sscosamp::projections::ProjectionBackend;

/// A configuration problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub type ConfigResult<T> = Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> ConfigResult<T> {
    Err(ConfigError(msg.into()))
}

/// Parsed key-value pairs with typed accessors.
#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> ConfigResult<Self> {
        let mut entries = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", no + 1));
            };
            let key = k.trim().to_ascii_lowercase();
            if entries.insert(key.clone(), v.trim().to_string()).is_some() {
                return err(format!("line {}: duplicate key '{key}'", no + 1));
            }
        }
        Ok(KeyValues { entries })
    }

    pub fn load(path: &Path) -> ConfigResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        KeyValues::parse(&text)
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> ConfigResult<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => err(format!("unknown key '{k}'")),
            None => Ok(()),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> ConfigResult<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| ConfigError(format!("invalid value '{v}' for '{key}'")))
            })
            .transpose()
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> ConfigResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> ConfigResult<T> {
        self.get(key)?
            .ok_or_else(|| ConfigError(format!("missing required key '{key}'")))
    }

    pub fn list<T: FromStr>(&self, key: &str) -> ConfigResult<Option<Vec<T>>> {
        self.raw(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<T>()
                            .map_err(|_| ConfigError(format!("invalid list entry '{s}' for '{key}'")))
                    })
                    .collect()
            })
            .transpose()
    }
}

/// Benchmark scenario: dictionary plus support pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Diagonal dictionary with half the atoms scaled up; uniform supports,
    /// real coefficients.
    RescaledIdentity,
    /// Overcomplete DFT with well-separated supports.
    DftSeparated,
    /// Overcomplete DFT with one contiguous block.
    DftClustered,
    /// Overcomplete DFT with half a block and half separated atoms.
    DftHybrid,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::RescaledIdentity => "rescaled_identity",
            Scenario::DftSeparated => "dft_separated",
            Scenario::DftClustered => "dft_clustered",
            Scenario::DftHybrid => "dft_hybrid",
        }
    }

    /// Outer iteration budget used unless the config overrides it.
    pub fn default_max_iters(&self) -> usize {
        match self {
            Scenario::DftClustered | Scenario::DftHybrid => 100,
            _ => 50,
        }
    }
}

impl FromStr for Scenario {
    type Err = ConfigError;

    fn from_str(s: &str) -> ConfigResult<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "rescaled_identity" => Ok(Scenario::RescaledIdentity),
            "dft_separated" => Ok(Scenario::DftSeparated),
            "dft_clustered" => Ok(Scenario::DftClustered),
            "dft_hybrid" => Ok(Scenario::DftHybrid),
            other => err(format!("unknown scenario '{other}'")),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A recovery algorithm to benchmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    /// Signal Space CoSaMP with one backend for both projections.
    SsCosamp(ProjectionBackend),
    Cosamp,
    Omp,
    L1,
}

impl Algorithm {
    pub fn name(&self) -> String {
        match self {
            Algorithm::SsCosamp(b) => format!("sscosamp-{}", b.name()),
            Algorithm::Cosamp => "cosamp".into(),
            Algorithm::Omp => "omp".into(),
            Algorithm::L1 => "l1".into(),
        }
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    /// `cosamp`, `omp`, `l1`, or `sscosamp-<backend>`.
    fn from_str(s: &str) -> ConfigResult<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "cosamp" => Ok(Algorithm::Cosamp),
            "omp" => Ok(Algorithm::Omp),
            "l1" => Ok(Algorithm::L1),
            _ => match s.strip_prefix("sscosamp-") {
                Some(b) => b
                    .parse::<ProjectionBackend>()
                    .map(Algorithm::SsCosamp)
                    .map_err(|e| ConfigError(e.to_string())),
                None => err(format!("unknown algorithm '{s}'")),
            },
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Monte Carlo sweep over the number of measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scenario: Scenario,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub m_grid: Vec<usize>,
    pub trials_per_point: usize,
    pub algorithms: Vec<Algorithm>,
    pub noise_norm: f64,
    pub master_seed: u64,
    pub snr_threshold_db: f64,
    /// Outer iteration budget of the iterative algorithms.
    pub max_iters: usize,
    /// Zeros required between separated atoms.
    pub min_gap: usize,
    /// Whether separation wraps around the end of the index range.
    pub cyclic: bool,
    /// Scale of the large atoms in the rescaled identity.
    pub scale: f64,
    /// Tikhonov bound as a multiple of the true coefficient norm.
    pub tikhonov_factor: f64,
}

pub const SWEEP_KEYS: &[&str] = &[
    "scenario",
    "n",
    "d",
    "k",
    "m_grid",
    "trials_per_point",
    "algorithms",
    "noise_norm",
    "master_seed",
    "snr_threshold_db",
    "max_iters",
    "min_gap",
    "cyclic",
    "scale",
    "tikhonov_factor",
];

impl SweepConfig {
    pub fn from_key_values(kv: &KeyValues) -> ConfigResult<Self> {
        kv.check_keys(SWEEP_KEYS)?;
        let scenario: Scenario = kv.require("scenario")?;
        let n: usize = kv.require("n")?;
        let default_d = match scenario {
            Scenario::RescaledIdentity => n,
            _ => 4 * n,
        };
        let cfg = SweepConfig {
            scenario,
            n,
            d: kv.get_or("d", default_d)?,
            k: kv.require("k")?,
            m_grid: kv.list("m_grid")?.ok_or_else(|| ConfigError("missing required key 'm_grid'".into()))?,
            trials_per_point: kv.require("trials_per_point")?,
            algorithms: kv
                .list("algorithms")?
                .ok_or_else(|| ConfigError("missing required key 'algorithms'".into()))?,
            noise_norm: kv.get_or("noise_norm", 0.0)?,
            master_seed: kv.get_or("master_seed", 0)?,
            snr_threshold_db: kv.get_or("snr_threshold_db", sscosamp::analysis::PERFECT_RECOVERY_DB)?,
            max_iters: kv.get_or("max_iters", scenario.default_max_iters())?,
            min_gap: kv.get_or("min_gap", 8)?,
            cyclic: kv.get_or("cyclic", true)?,
            scale: kv.get_or("scale", 100.0)?,
            tikhonov_factor: kv.get_or("tikhonov_factor", 10.0)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> ConfigResult<Self> {
        SweepConfig::from_key_values(&KeyValues::load(path)?)
    }

    pub fn validate(&self) -> ConfigResult<()> {
        if self.n < 2 {
            return err("n must be at least 2");
        }
        match self.scenario {
            Scenario::RescaledIdentity => {
                if self.d != self.n || self.n % 2 != 0 {
                    return err("rescaled_identity needs an even n and d = n");
                }
                if !(self.scale > 0.0) {
                    return err("scale must be positive");
                }
            }
            _ => {
                if self.d % self.n != 0 {
                    return err("DFT scenarios need d to be a multiple of n");
                }
            }
        }
        if self.k == 0 || self.k > self.d {
            return err("k must satisfy 1 <= k <= d");
        }
        if self.m_grid.is_empty() {
            return err("m_grid must not be empty");
        }
        if self.m_grid.windows(2).any(|w| w[0] >= w[1]) {
            return err("m_grid must be strictly increasing");
        }
        if self.m_grid[0] == 0 || *self.m_grid.last().unwrap_or(&0) > self.n {
            return err("every m must satisfy 1 <= m <= n");
        }
        if self.trials_per_point == 0 {
            return err("trials_per_point must be at least 1");
        }
        if self.algorithms.is_empty() {
            return err("algorithms must not be empty");
        }
        if !(self.noise_norm >= 0.0) || !self.noise_norm.is_finite() {
            return err("noise_norm must be finite and non-negative");
        }
        if self.max_iters == 0 {
            return err("max_iters must be at least 1");
        }
        if !(self.tikhonov_factor > 0.0) {
            return err("tikhonov_factor must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# comment
scenario = dft_separated
n = 32
k = 2
m_grid = 8, 16, 32
trials_per_point = 3
algorithms = sscosamp-omp, omp, cosamp, sscosamp-cosamp
";

    #[test]
    fn parses_sample() {
        let cfg = SweepConfig::from_key_values(&KeyValues::parse(SAMPLE).unwrap()).unwrap();
        assert_eq!(cfg.d, 128);
        assert_eq!(cfg.m_grid, vec![8, 16, 32]);
        assert_eq!(cfg.algorithms[0], Algorithm::SsCosamp(ProjectionBackend::Omp));
        assert_eq!(cfg.max_iters, 50);
        assert_eq!(cfg.snr_threshold_db, 100.0);
    }

    #[test]
    fn rejects_bad_configs() {
        for (from, to) in [
            ("m_grid = 8, 16, 32", "m_grid = 16, 8"),
            ("m_grid = 8, 16, 32", "m_grid = 8, 64"),
            ("k = 2", "k = 0"),
            ("n = 32", "n = 32\nbogus = 1"),
            ("omp, cosamp", "omp, magic"),
            ("n = 32", "n = 32\nn = 16"),
        ] {
            let text = SAMPLE.replace(from, to);
            let parsed = KeyValues::parse(&text).and_then(|kv| SweepConfig::from_key_values(&kv));
            assert!(parsed.is_err(), "{to}");
        }
    }
}
