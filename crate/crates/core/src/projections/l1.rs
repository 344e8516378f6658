//! ℓ1 minimization over a residual ball,
//! `min ‖α‖₁ s.t. ‖z − Φα‖ ≤ σ`, by ADMM on the splitting `α = u`.
//!
//! The `α`-step is the Euclidean projection onto the feasible set
//! `{α : ‖z − Φα‖ ≤ σ}`. With the thin SVD `Φ = U S Vᴴ` this projection is
//! `α' = c + V (β − Vᴴc)`, `βᵢ = (cᵢ' + μ sᵢ gᵢ)/(1 + μ sᵢ²)`, where `g = Uᴴz`
//! and the multiplier `μ ≥ 0` is found by bisection on the residual. The
//! `u`-step is soft thresholding. The penalty is adapted by residual
//! balancing.

use crate::error::{Error, Result};
use crate::linalg::svd::Svd;
use crate::linalg::{norm, norm_sqr, Matrix, C64};

/// The penalty is frozen after this many iterations so that ADMM converges.
const BALANCING_ITERS: usize = 10_000;

/// Tuning for the ℓ1 solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Params {
    /// Ball radius relative to `‖z‖`.
    pub sigma_rel: f64,
    pub max_iters: usize,
    /// Relative stopping tolerance on the primal and dual residuals.
    pub tol: f64,
}

impl Default for L1Params {
    fn default() -> Self {
        L1Params {
            sigma_rel: 1e-6,
            max_iters: 20_000,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct L1Solution {
    /// Feasible iterate.
    pub coeffs: Vec<C64>,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
}

/// Precomputed data for repeated projections onto one residual ball.
struct BallProjector<'a> {
    svd: &'a Svd,
    active: usize,
    g: Vec<C64>,
    perp_sqr: f64,
    radius_sqr: f64,
}

impl<'a> BallProjector<'a> {
    fn new(svd: &'a Svd, z: &[C64], sigma: f64) -> Self {
        let top = svd.s.first().copied().unwrap_or(0.0);
        let active = svd.s.iter().take_while(|&&s| s > 1e-12 * top && s > 0.0).count();
        let g: Vec<C64> = (0..active)
            .map(|i| crate::linalg::dot(svd.u.col(i), z))
            .collect();
        let perp_sqr = (norm_sqr(z) - norm_sqr(&g)).max(0.0);
        // The ball is widened by the part of z no coefficient vector can reach.
        BallProjector {
            svd,
            active,
            g,
            perp_sqr,
            radius_sqr: perp_sqr + sigma * sigma,
        }
    }

    fn residual_sqr(&self, d: &[C64], mu: f64) -> f64 {
        d.iter()
            .zip(&self.svd.s)
            .map(|(di, &s)| di.norm_sqr() / (1.0 + mu * s * s).powi(2))
            .sum::<f64>()
            + self.perp_sqr
    }

    fn project(&self, c: &[C64]) -> Vec<C64> {
        let v = &self.svd.v;
        let cv: Vec<C64> = (0..self.active).map(|i| crate::linalg::dot(v.col(i), c)).collect();
        let d: Vec<C64> = (0..self.active)
            .map(|i| cv[i] * self.svd.s[i] - self.g[i])
            .collect();
        if self.residual_sqr(&d, 0.0) <= self.radius_sqr {
            return c.to_vec();
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.residual_sqr(&d, hi) > self.radius_sqr && hi < 1e300 {
            lo = hi;
            hi *= 16.0;
        }
        for _ in 0..200 {
            let mid = if lo == 0.0 { hi / 2.0 } else { 0.5 * (lo + hi) };
            if self.residual_sqr(&d, mid) > self.radius_sqr {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * hi {
                break;
            }
        }
        let mu = hi;
        let mut out = c.to_vec();
        for i in 0..self.active {
            let s = self.svd.s[i];
            let beta = (cv[i] + self.g[i] * (mu * s)) / (1.0 + mu * s * s);
            crate::linalg::axpy(beta - cv[i], v.col(i), &mut out);
        }
        out
    }
}

fn soft_threshold(x: &[C64], tau: f64) -> Vec<C64> {
    x.iter()
        .map(|&v| {
            let a = v.norm();
            if a <= tau {
                C64::new(0.0, 0.0)
            } else {
                v * ((a - tau) / a)
            }
        })
        .collect()
}

/// Solves `min ‖α‖₁ s.t. ‖z − Φα‖ ≤ σ` given the thin SVD of `Φ`.
pub fn basis_pursuit(phi: &Matrix, svd: &Svd, z: &[C64], sigma: f64, params: &L1Params) -> Result<L1Solution> {
    if z.len() != phi.rows() {
        return Err(Error::invalid("right-hand side length does not match the system"));
    }
    if !(sigma >= 0.0) || params.max_iters == 0 || !(params.tol > 0.0) {
        return Err(Error::invalid("ℓ1 solver parameters must be positive"));
    }
    let d = phi.cols();
    let zero = vec![C64::new(0.0, 0.0); d];
    let ball = BallProjector::new(svd, z, sigma);
    if norm_sqr(z) <= ball.radius_sqr {
        return Ok(L1Solution {
            coeffs: zero,
            iterations: 0,
            primal_residual: 0.0,
            dual_residual: 0.0,
        });
    }

    // Start from the least-norm solution; the threshold scale follows its
    // largest entry.
    let mut alpha = ball.project(&zero);
    let peak = alpha.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut tau = 0.05 * peak.max(f64::MIN_POSITIVE);
    let mut u = soft_threshold(&alpha, tau);
    let mut w: Vec<C64> = alpha.iter().zip(&u).map(|(a, b)| a - b).collect();
    let floor = 1e-12 * norm(&alpha).max(f64::MIN_POSITIVE);

    let (mut primal, mut dual) = (f64::INFINITY, f64::INFINITY);
    for it in 1..=params.max_iters {
        let c: Vec<C64> = u.iter().zip(&w).map(|(a, b)| a - b).collect();
        alpha = ball.project(&c);
        let shifted: Vec<C64> = alpha.iter().zip(&w).map(|(a, b)| a + b).collect();
        let u_next = soft_threshold(&shifted, tau);
        let mut primal_sqr = 0.0;
        for ((wi, ai), ui) in w.iter_mut().zip(&alpha).zip(&u_next) {
            let r = ai - ui;
            *wi += r;
            primal_sqr += r.norm_sqr();
        }
        primal = primal_sqr.sqrt();
        let du: f64 = u_next.iter().zip(&u).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        dual = du / tau;
        u = u_next;

        let scale = norm(&alpha).max(norm(&u)).max(floor);
        if primal <= params.tol * scale && du <= params.tol * scale {
            return Ok(L1Solution {
                coeffs: alpha,
                iterations: it,
                primal_residual: primal,
                dual_residual: dual,
            });
        }
        if it % 10 == 0 && it <= BALANCING_ITERS {
            // Residual balancing; the scaled dual variable follows the penalty.
            if primal > 10.0 * du {
                tau *= 0.5;
                w.iter_mut().for_each(|v| *v *= 2.0);
            } else if du > 10.0 * primal {
                tau *= 2.0;
                w.iter_mut().for_each(|v| *v *= 0.5);
            }
        }
        if !all_finite_pair(&alpha, &u) {
            return Err(Error::numerical(format!("ℓ1 solver produced non-finite iterates at iteration {it}")));
        }
    }
    Err(Error::numerical(format!(
        "ℓ1 solver did not converge in {} iterations (primal residual {primal:.3e}, dual residual {dual:.3e}, tolerance {:.1e})",
        params.max_iters, params.tol
    )))
}

fn all_finite_pair(a: &[C64], b: &[C64]) -> bool {
    crate::linalg::all_finite(a) && crate::linalg::all_finite(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn identity_system_returns_sparse_vector() {
        let phi = Matrix::identity(5);
        let svd = Svd::new(&phi).unwrap();
        let z = vec![c(0.0), c(3.0), c(0.0), c(-1.0), c(0.0)];
        let sol = basis_pursuit(&phi, &svd, &z, 1e-9, &L1Params::default()).unwrap();
        for (a, b) in sol.coeffs.iter().zip(&z) {
            assert!((a - b).norm() < 1e-6);
        }
    }

    #[test]
    fn prefers_sparse_representation() {
        // z equals the first column; the other two columns reach it only
        // with a larger ℓ1 norm.
        let s = 0.5f64.sqrt();
        let phi = Matrix::from_columns(
            2,
            &[vec![c(1.0), c(0.0)], vec![c(s), c(s)], vec![c(s), c(-s)]],
        )
        .unwrap();
        let svd = Svd::new(&phi).unwrap();
        let z = vec![c(1.0), c(0.0)];
        let sol = basis_pursuit(&phi, &svd, &z, 1e-8, &L1Params::default()).unwrap();
        assert!((sol.coeffs[0] - c(1.0)).norm() < 1e-4);
        assert!(sol.coeffs[1].norm() < 1e-4 && sol.coeffs[2].norm() < 1e-4);
        let r: Vec<C64> = phi.mul_vec(&sol.coeffs).iter().zip(&z).map(|(a, b)| a - b).collect();
        assert!(norm(&r) <= 1e-8 * (1.0 + 1e-9));
    }

    #[test]
    fn zero_right_hand_side() {
        let phi = Matrix::identity(3);
        let svd = Svd::new(&phi).unwrap();
        let sol = basis_pursuit(&phi, &svd, &[c(0.0); 3], 0.0, &L1Params::default()).unwrap();
        assert_eq!(sol.iterations, 0);
        assert!(sol.coeffs.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn reports_non_convergence() {
        let phi = Matrix::from_fn(3, 6, |i, j| C64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, (i + j) as f64 * 0.1));
        let svd = Svd::new(&phi).unwrap();
        let z = vec![c(1.0), c(-2.0), c(0.5)];
        let params = L1Params {
            max_iters: 2,
            ..L1Params::default()
        };
        let err = basis_pursuit(&phi, &svd, &z, 1e-9, &params).unwrap_err();
        assert!(err.is_numerical());
        assert!(err.to_string().contains("did not converge"));
    }
}
