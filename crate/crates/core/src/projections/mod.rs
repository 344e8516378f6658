//! Near-optimal support identification `S_D(z, k)`.
//!
//! Every backend returns exactly `k` atom indices. Ties are resolved toward
//! the lower index. The exhaustive oracle and the `(ε1, ε2)` quality
//! measurement live here as well.

pub mod cosamp;
pub mod exhaustive;
pub mod greedy;
pub mod l1;

use std::fmt;
use std::str::FromStr;

pub use cosamp::CosampParams;
pub use exhaustive::{
    combinations, count_combinations, optimal_projection, optimal_projection_capped, Combinations,
    DEFAULT_ENUMERATION_CAP,
};
pub use l1::{basis_pursuit, L1Params, L1Solution};

use crate::error::{Error, Result};
use crate::linalg::{dist, norm, top_k_indices, C64};
use crate::model::{Dictionary, SupportSet};

/// Support identification method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectionBackend {
    /// `k` largest normalized correlations.
    Threshold,
    /// Orthogonal matching pursuit with normalized atom scores.
    Omp,
    /// CoSaMP with the identity as sensing operator.
    Cosamp(CosampParams),
    /// ℓ1 minimization over a small residual ball, then the `k` largest
    /// magnitudes.
    L1(L1Params),
    /// Full enumeration, refusing instances with more than `cap` supports.
    Exhaustive { cap: u128 },
}

impl ProjectionBackend {
    pub fn cosamp() -> Self {
        ProjectionBackend::Cosamp(CosampParams::default())
    }

    pub fn l1() -> Self {
        ProjectionBackend::L1(L1Params::default())
    }

    pub fn exhaustive() -> Self {
        ProjectionBackend::Exhaustive {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    /// Lower-case identifier used in configs and CSV output.
    pub fn name(&self) -> &'static str {
        match self {
            ProjectionBackend::Threshold => "threshold",
            ProjectionBackend::Omp => "omp",
            ProjectionBackend::Cosamp(_) => "cosamp",
            ProjectionBackend::L1(_) => "l1",
            ProjectionBackend::Exhaustive { .. } => "exhaustive",
        }
    }

    /// Checks that all parameters are positive.
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            ProjectionBackend::Threshold | ProjectionBackend::Omp => true,
            ProjectionBackend::Cosamp(p) => p.max_iters > 0 && p.bound_ratio > 0.0,
            ProjectionBackend::L1(p) => p.max_iters > 0 && p.tol > 0.0 && p.sigma_rel > 0.0,
            ProjectionBackend::Exhaustive { cap } => *cap > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("{} backend parameters must be positive", self.name())))
        }
    }
}

impl fmt::Display for ProjectionBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProjectionBackend {
    type Err = Error;

    /// Parses a backend name with default parameters.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "threshold" => Ok(ProjectionBackend::Threshold),
            "omp" => Ok(ProjectionBackend::Omp),
            "cosamp" => Ok(ProjectionBackend::cosamp()),
            "l1" => Ok(ProjectionBackend::l1()),
            "exhaustive" => Ok(ProjectionBackend::exhaustive()),
            other => Err(Error::invalid(format!("unknown projection backend '{other}'"))),
        }
    }
}

/// `S_D(z, k)` for the chosen backend.
pub fn project_support(
    backend: &ProjectionBackend,
    dict: &Dictionary,
    z: &[C64],
    k: usize,
) -> Result<SupportSet> {
    if z.len() != dict.n() {
        return Err(Error::invalid(format!(
            "signal has length {}, dictionary has {} rows",
            z.len(),
            dict.n()
        )));
    }
    if k == 0 || k > dict.d() {
        return Err(Error::invalid(format!("need 1 <= k <= d, got k={k}, d={}", dict.d())));
    }
    backend.validate()?;
    let m = dict.matrix();
    let norms = dict.column_norms();
    let idx = match backend {
        ProjectionBackend::Threshold => greedy::threshold(m, norms, z, k),
        ProjectionBackend::Omp => greedy::omp(m, norms, z, k),
        ProjectionBackend::Cosamp(p) => cosamp::cosamp_support(m, norms, z, k, p)?,
        ProjectionBackend::L1(p) => {
            let svd = dict.row_space_svd()?;
            let sol = basis_pursuit(m, &svd, z, p.sigma_rel * norm(z), p)?;
            let mags: Vec<f64> = sol.coeffs.iter().map(|v| v.norm()).collect();
            top_k_indices(&mags, k)
        }
        ProjectionBackend::Exhaustive { cap } => {
            return Ok(optimal_projection_capped(dict, z, k, *cap)?.0);
        }
    };
    let support = SupportSet::from_unsorted(idx);
    debug_assert_eq!(support.len(), k);
    Ok(support)
}

/// Denominators below this fraction of `‖z‖` make the matching ε infinite.
pub const EPS_DENOMINATOR_FLOOR: f64 = 1e-12;

/// Measured `(ε1, ε2)` of one backend on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionQuality {
    /// `‖P_opt z − P_est z‖ / ‖P_opt z‖`, or infinity.
    pub eps1: f64,
    /// `‖P_opt z − P_est z‖ / ‖z − P_opt z‖`, or infinity.
    pub eps2: f64,
    /// `‖z − P_opt z‖`.
    pub opt_residual: f64,
    /// `‖z − P_est z‖`.
    pub est_residual: f64,
    /// `‖P_opt z − P_est z‖`.
    pub discrepancy: f64,
    /// `‖P_opt z‖`.
    pub opt_energy: f64,
    pub opt_support: SupportSet,
    pub est_support: SupportSet,
}

impl ProjectionQuality {
    /// Whether `discrepancy ≤ min(ε1‖P_opt z‖, ε2‖z − P_opt z‖)` holds, up to
    /// a relative rounding allowance of `rel_tol`. An infinite ε bounds
    /// nothing and leaves the other term in charge.
    pub fn satisfies_bound(&self, rel_tol: f64) -> bool {
        let term = |eps: f64, den: f64| if eps.is_infinite() { f64::INFINITY } else { eps * den };
        let bound = term(self.eps1, self.opt_energy).min(term(self.eps2, self.opt_residual));
        self.discrepancy <= bound * (1.0 + rel_tol)
    }
}

fn ratio(num: f64, den: f64, floor: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else if den < floor {
        f64::INFINITY
    } else {
        num / den
    }
}

/// Compares a backend against the exhaustive optimum on one instance.
pub fn evaluate_projection_quality(
    dict: &Dictionary,
    z: &[C64],
    k: usize,
    backend: &ProjectionBackend,
) -> Result<ProjectionQuality> {
    let (opt_support, p_opt) = optimal_projection(dict, z, k)?;
    let est_support = project_support(backend, dict, z, k)?;
    let p_est = if est_support == opt_support {
        p_opt.clone()
    } else {
        dict.projector(&est_support)?.apply(z)?
    };
    let discrepancy = dist(&p_opt, &p_est);
    let opt_energy = norm(&p_opt);
    let opt_residual = dist(z, &p_opt);
    let floor = EPS_DENOMINATOR_FLOOR * norm(z);
    Ok(ProjectionQuality {
        eps1: ratio(discrepancy, opt_energy, floor),
        eps2: ratio(discrepancy, opt_residual, floor),
        opt_residual,
        est_residual: dist(z, &p_est),
        discrepancy,
        opt_energy,
        opt_support,
        est_support,
    })
}
