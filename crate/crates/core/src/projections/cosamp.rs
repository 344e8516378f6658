use crate::error::Result;
use crate::linalg::{norm, ridge_solve, top_k_indices, Matrix, C64};

/// Settings for CoSaMP used as a projection, `z ≈ Dα` with no sensing step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosampParams {
    pub max_iters: usize,
    /// The inner coefficient norm bound is `bound_ratio · ‖z‖ / min_j ‖dⱼ‖`.
    pub bound_ratio: f64,
}

impl Default for CosampParams {
    fn default() -> Self {
        CosampParams {
            max_iters: 20,
            bound_ratio: 10.0,
        }
    }
}

/// Support of the `k`-sparse CoSaMP iterate with the smallest residual
/// for `z ≈ Dα`.
pub fn cosamp_support(
    matrix: &Matrix,
    col_norms: &[f64],
    z: &[C64],
    k: usize,
    params: &CosampParams,
) -> Result<Vec<usize>> {
    let d = matrix.cols();
    let zn = norm(z);
    if zn == 0.0 {
        return Ok((0..k).collect());
    }
    let min_norm = col_norms.iter().copied().fold(f64::INFINITY, f64::min);
    let bound = params.bound_ratio * zn / min_norm;

    let mut residual = z.to_vec();
    let mut gamma: Vec<usize> = Vec::new();
    let mut previous_merge: Option<Vec<usize>> = None;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..params.max_iters {
        let h: Vec<f64> = matrix.adjoint_mul_vec(&residual).iter().map(|v| v.norm()).collect();
        let mut merged = top_k_indices(&h, (2 * k).min(d));
        merged.extend_from_slice(&gamma);
        merged.sort_unstable();
        merged.dedup();
        // The same merged support reproduces the same iterate.
        if previous_merge.as_ref() == Some(&merged) {
            break;
        }
        let sol = ridge_solve(&matrix.select_columns(&merged), z, bound, 1e-10)?;
        let mags: Vec<f64> = sol.coeffs.iter().map(|v| v.norm()).collect();
        let keep = top_k_indices(&mags, k);
        gamma = keep.iter().map(|&i| merged[i]).collect();
        residual = z.to_vec();
        for &i in &keep {
            crate::linalg::axpy(-sol.coeffs[i], matrix.col(merged[i]), &mut residual);
        }
        let rn = norm(&residual);
        if best.as_ref().is_none_or(|(b, _)| rn < *b) {
            best = Some((rn, gamma.clone()));
        }
        if rn <= 1e-12 * zn {
            break;
        }
        previous_merge = Some(merged);
    }
    Ok(best.map(|(_, g)| g).unwrap_or(gamma))
}
