use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::svd::Svd;
use crate::linalg::{norm_sqr, C64};
use crate::model::{derive_seed, rng_from_seed, Dictionary, SensingMatrix, SupportSet};
use crate::projections::exhaustive::{check_cap, combinations, DEFAULT_ENUMERATION_CAP};

/// Samples with `‖Dα‖` below this floor are skipped.
pub const SIGNAL_FLOOR: f64 = 1e-12;

/// Monte Carlo lower estimate of the D-RIP constant of order `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DRipEstimate {
    pub order_k: usize,
    /// Largest observed `|‖ADα‖²/‖Dα‖² − 1|`.
    pub delta_lower: f64,
    /// Requested samples.
    pub trials: usize,
    /// Samples that cleared [`SIGNAL_FLOOR`].
    pub valid_samples: usize,
    pub seed: u64,
}

impl DRipEstimate {
    /// Whether the estimate is below one, as required of a RIP constant.
    pub fn is_valid_rip(&self) -> bool {
        self.delta_lower < 1.0
    }
}

fn check_inputs(a: &SensingMatrix, dict: &Dictionary, k: usize) -> Result<()> {
    if a.n() != dict.n() {
        return Err(Error::invalid("sensing matrix and dictionary disagree on n"));
    }
    if k == 0 || k > dict.d() {
        return Err(Error::invalid(format!("need 1 <= k <= d, got k={k}")));
    }
    Ok(())
}

/// Distortion of each sample; `None` for samples below the floor. Sample
/// `t` depends only on `(seed, t)`, so a longer run extends a shorter one.
pub fn drip_samples(
    a: &SensingMatrix,
    dict: &Dictionary,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<Option<f64>>> {
    check_inputs(a, dict, k)?;
    Ok((0..trials as u64)
        .map(|t| {
            let mut rng = rng_from_seed(derive_seed(seed, &[t]));
            let support = sample(&mut rng, dict.d(), k).into_vec();
            let mut x = vec![C64::new(0.0, 0.0); dict.n()];
            for j in support {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                crate::linalg::axpy(C64::new(re, im), dict.matrix().col(j), &mut x);
            }
            let energy = norm_sqr(&x);
            if energy.sqrt() < SIGNAL_FLOOR {
                return None;
            }
            Some((norm_sqr(&a.apply(&x)) / energy - 1.0).abs())
        })
        .collect())
}

pub fn drip_estimate(
    a: &SensingMatrix,
    dict: &Dictionary,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<DRipEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let samples = drip_samples(a, dict, k, trials, seed)?;
    let valid: Vec<f64> = samples.into_iter().flatten().collect();
    if valid.is_empty() {
        return Err(Error::numerical("every sampled signal fell below the norm floor"));
    }
    Ok(DRipEstimate {
        order_k: k,
        delta_lower: valid.iter().copied().fold(0.0, f64::max),
        trials,
        valid_samples: valid.len(),
        seed,
    })
}

/// `max |σ² − 1|` over the singular values of `A Q`, where `Q` is an
/// orthonormal basis of `R(D_Λ)`. This equals
/// `‖P_Λ AᴴA P_Λ − P_Λ‖`.
pub fn support_distortion(a: &SensingMatrix, dict: &Dictionary, support: &SupportSet) -> Result<f64> {
    if a.n() != dict.n() {
        return Err(Error::invalid("sensing matrix and dictionary disagree on n"));
    }
    let p = dict.projector(support)?;
    if p.rank() == 0 {
        return Ok(0.0);
    }
    let s = Svd::singular_values(&a.matrix().matmul(p.basis()))?;
    let mut worst = s.iter().map(|v| (v * v - 1.0).abs()).fold(0.0, f64::max);
    if s.len() < p.rank() {
        // Fewer rows than the subspace dimension: A has a null direction there.
        worst = worst.max(1.0);
    }
    Ok(worst)
}

/// Exact D-RIP constant of order `k` by enumerating all supports of size
/// `k`. Refuses instances above the default enumeration cap.
pub fn drip_exhaustive(a: &SensingMatrix, dict: &Dictionary, k: usize) -> Result<f64> {
    check_inputs(a, dict, k)?;
    check_cap(dict.d(), k, DEFAULT_ENUMERATION_CAP)?;
    let mut worst: f64 = 0.0;
    for idx in combinations(dict.d(), k) {
        worst = worst.max(support_distortion(a, dict, &SupportSet::new(idx)?)?);
    }
    Ok(worst)
}
