use crate::error::{Error, Result};
use crate::linalg::qr::PivotedQr;
use crate::linalg::{norm, norm_l1, C64};
use crate::model::{Dictionary, SparseCoefficients, SupportSet};
use crate::projections::exhaustive::{check_cap, combinations, DEFAULT_ENUMERATION_CAP};
use crate::projections::greedy;

/// How candidate supports are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MismatchMode {
    /// Every support of size `k`.
    Exhaustive,
    /// The support selected by OMP.
    Greedy,
}

/// Value of `‖x − Dα‖ + ‖x − Dα‖₁/√k` at the best candidate found.
///
/// Each support is fit by least squares, which minimizes only the ℓ2 term,
/// so the value is an upper bound on the infimum over `k`-sparse `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct MismatchReport {
    pub k: usize,
    pub mismatch_value: f64,
    pub minimizing_coeffs: SparseCoefficients,
    pub mode: MismatchMode,
    /// Always `true`: the value bounds the true mismatch from above.
    pub upper_bound: bool,
}

/// `‖r‖ + ‖r‖₁/√k` for `r = x − D_Λ c`.
pub fn mismatch_objective(dict: &Dictionary, x: &[C64], support: &SupportSet, coeffs: &[C64], k: usize) -> f64 {
    let mut r = x.to_vec();
    for (j, &c) in support.iter().zip(coeffs) {
        crate::linalg::axpy(-c, dict.matrix().col(j), &mut r);
    }
    norm(&r) + norm_l1(&r) / (k as f64).sqrt()
}

fn fit(dict: &Dictionary, x: &[C64], support: &SupportSet, k: usize) -> (f64, Vec<C64>) {
    let coeffs = PivotedQr::new(&dict.columns(support), 1e-12).solve_least_squares(x);
    (mismatch_objective(dict, x, support, &coeffs, k), coeffs)
}

pub fn mismatch(dict: &Dictionary, x: &[C64], k: usize, mode: MismatchMode) -> Result<MismatchReport> {
    if x.len() != dict.n() {
        return Err(Error::invalid("signal length does not match the dictionary"));
    }
    if k == 0 || k > dict.d() {
        return Err(Error::invalid(format!("need 1 <= k <= d, got k={k}")));
    }
    let candidates: Vec<SupportSet> = match mode {
        MismatchMode::Exhaustive => {
            check_cap(dict.d(), k, DEFAULT_ENUMERATION_CAP)?;
            combinations(dict.d(), k)
                .map(SupportSet::new)
                .collect::<Result<_>>()?
        }
        MismatchMode::Greedy => vec![SupportSet::from_unsorted(greedy::omp(
            dict.matrix(),
            dict.column_norms(),
            x,
            k,
        ))],
    };
    let mut best: Option<(f64, SupportSet, Vec<C64>)> = None;
    for support in candidates {
        let (value, coeffs) = fit(dict, x, &support, k);
        if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
            best = Some((value, support, coeffs));
        }
    }
    let (value, support, coeffs) = best.ok_or_else(|| Error::invalid("no candidate supports"))?;
    Ok(MismatchReport {
        k,
        mismatch_value: value,
        minimizing_coeffs: SparseCoefficients::new(support, coeffs, dict.d())?,
        mode,
        upper_bound: true,
    })
}
