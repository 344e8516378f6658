//! Norm-constrained least squares.
//!
//! Solves `min ‖y − B β‖ s.t. ‖β‖ ≤ bound`. The unconstrained solution is
//! returned when it already satisfies the bound. Otherwise the solution is
//! the ridge estimate `β(λ) = (BᴴB + λI)⁻¹ Bᴴ y` with `λ` chosen by bisection
//! so that `‖β(λ)‖` meets the bound. The ridge family is evaluated through the
//! SVD of the triangular QR factor, so `BᴴB` is never formed explicitly.

use super::qr::PivotedQr;
use super::svd::Svd;
use super::{norm, Matrix, C64};
use crate::error::{Error, Result};

/// Bisection steps before the solver gives up.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Relative pivot tolerance for the unconstrained solve.
const LSQ_RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct RidgeSolution {
    pub coeffs: Vec<C64>,
    /// Ridge parameter; zero for the unconstrained solution.
    pub lambda: f64,
    /// Whether the norm bound was active.
    pub constrained: bool,
}

/// Norm-constrained least squares on an explicit system matrix `B`.
pub fn ridge_solve(b: &Matrix, y: &[C64], norm_bound: f64, tol: f64) -> Result<RidgeSolution> {
    if b.rows() == 0 || b.cols() == 0 {
        return Err(Error::invalid("least squares needs a non-empty system"));
    }
    if y.len() != b.rows() {
        return Err(Error::invalid(format!(
            "right-hand side has length {}, expected {}",
            y.len(),
            b.rows()
        )));
    }
    if !(norm_bound > 0.0) || !(tol > 0.0) {
        return Err(Error::invalid("norm bound and tolerance must be positive"));
    }

    let qr = PivotedQr::new(b, LSQ_RANK_TOL);
    let basic = qr.solve_least_squares(y);
    if norm(&basic) <= norm_bound {
        return Ok(RidgeSolution {
            coeffs: basic,
            lambda: 0.0,
            constrained: false,
        });
    }

    // Reduce to the triangular factor: ‖y − Bβ‖² = ‖c − R Pᵀβ‖² + const.
    let r = qr.r();
    let steps = r.rows();
    let c: Vec<C64> = qr.apply_qh(y)[..steps].to_vec();
    let svd = Svd::of_triangular(r)?;
    let g = svd.u.adjoint_mul_vec(&c);
    let sigma = &svd.s;
    let top = sigma.first().copied().unwrap_or(0.0);

    let unpermute = |w: Vec<C64>| -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); w.len()];
        for (k, &p) in qr.perm().iter().enumerate() {
            out[p] = w[k];
        }
        out
    };
    let combine = |weights: &dyn Fn(f64) -> f64| -> Vec<C64> {
        let mut w = vec![C64::new(0.0, 0.0); r.cols()];
        for (l, (&s, &gl)) in sigma.iter().zip(&g).enumerate() {
            let f = weights(s);
            if f == 0.0 {
                continue;
            }
            let coef = gl * f;
            for (wi, vi) in w.iter_mut().zip(svd.v.col(l)) {
                *wi += vi * coef;
            }
        }
        w
    };

    // Minimum-norm unconstrained solution.
    let min_norm = combine(&|s| if s > LSQ_RANK_TOL * top && s > 0.0 { 1.0 / s } else { 0.0 });
    if norm(&min_norm) <= norm_bound {
        return Ok(RidgeSolution {
            coeffs: unpermute(min_norm),
            lambda: 0.0,
            constrained: false,
        });
    }

    let ridge_norm = |lambda: f64| -> f64 {
        sigma
            .iter()
            .zip(&g)
            .map(|(&s, gl)| {
                let f = s / (s * s + lambda);
                f * f * gl.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    };

    // ‖β(λ)‖ ≤ ‖Rᴴc‖ / λ gives a feasible upper end.
    let rhc = sigma
        .iter()
        .zip(&g)
        .map(|(&s, gl)| s * s * gl.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let mut hi = rhc / norm_bound;
    if hi == 0.0 {
        return Ok(RidgeSolution {
            coeffs: vec![C64::new(0.0, 0.0); r.cols()],
            lambda: 0.0,
            constrained: false,
        });
    }
    let mut lo = hi * 1e-30;
    while ridge_norm(lo) <= norm_bound && lo > f64::MIN_POSITIVE * 1e10 {
        lo *= 1e-10;
    }

    let mut converged = false;
    for _ in 0..MAX_BISECTION_STEPS {
        if ridge_norm(hi) >= norm_bound * (1.0 - tol) {
            converged = true;
            break;
        }
        let mid = (lo * hi).sqrt();
        if ridge_norm(mid) > norm_bound {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if !converged {
        return Err(Error::numerical(format!(
            "ridge bisection did not meet the norm bound {norm_bound:.3e} within {MAX_BISECTION_STEPS} steps (lambda in [{lo:.3e}, {hi:.3e}])"
        )));
    }
    let lambda = hi;
    let w = combine(&|s| s / (s * s + lambda));
    Ok(RidgeSolution {
        coeffs: unpermute(w),
        lambda,
        constrained: true,
    })
}

/// Coefficients `β` minimizing `‖y − A·D_T·β‖` subject to `‖β‖ ≤ norm_bound`.
/// The synthesized signal is `D_T β`.
pub fn tikhonov_lsq(
    a: &Matrix,
    d_t: &Matrix,
    y: &[C64],
    norm_bound: f64,
    tol: f64,
) -> Result<Vec<C64>> {
    if a.rows() < 1 {
        return Err(Error::invalid("sensing matrix has no rows"));
    }
    if d_t.cols() == 0 {
        return Err(Error::invalid("empty support"));
    }
    if a.cols() != d_t.rows() {
        return Err(Error::invalid("sensing matrix and dictionary disagree on n"));
    }
    Ok(ridge_solve(&a.matmul(d_t), y, norm_bound, tol)?.coeffs)
}
