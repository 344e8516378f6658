//! Thin singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Tall inputs with many more rows than columns are first reduced with a
//! pivoted QR so that the Jacobi sweeps only touch a square factor. Wide
//! inputs are handled through their conjugate transpose.

use super::qr::PivotedQr;
use super::{dot, norm, Matrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// `B = U · diag(s) · Vᴴ` with `s` sorted non-increasingly.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × r` with orthonormal columns.
    pub u: Matrix,
    pub s: Vec<f64>,
    /// `cols × r` with orthonormal columns.
    pub v: Matrix,
}

impl Svd {
    /// Thin SVD, `r = min(rows, cols)`.
    pub fn new(b: &Matrix) -> Result<Svd> {
        if b.is_empty() {
            return Err(Error::invalid("SVD of an empty matrix"));
        }
        if b.rows() >= b.cols() {
            svd_tall(b)
        } else {
            let t = svd_tall(&b.adjoint())?;
            Ok(Svd { u: t.v, s: t.s, v: t.u })
        }
    }

    /// Thin SVD of a factor with `rows ≤ cols`, such as the triangular
    /// factor of a pivoted QR, computed from its conjugate transpose.
    pub fn of_triangular(r: &Matrix) -> Result<Svd> {
        if r.is_empty() || r.rows() > r.cols() {
            return Err(Error::invalid("triangular SVD needs a non-empty factor with rows <= cols"));
        }
        let t = jacobi(&r.adjoint())?;
        Ok(Svd { u: t.v, s: t.s, v: t.u })
    }

    /// Singular values only.
    pub fn singular_values(b: &Matrix) -> Result<Vec<f64>> {
        Ok(Svd::new(b)?.s)
    }

    /// Number of singular values above `tol · s[0]`.
    pub fn numerical_rank(&self, tol: f64) -> usize {
        let top = self.s.first().copied().unwrap_or(0.0);
        self.s.iter().filter(|&&x| x > tol * top && x > 0.0).count()
    }
}

fn svd_tall(b: &Matrix) -> Result<Svd> {
    let (m, n) = (b.rows(), b.cols());
    if m >= 2 * n && n > 1 {
        // B P = Q R  =>  B = Q (R Pᵀ); decompose the small square factor.
        let qr = PivotedQr::new(b, 0.0);
        let mut r_unperm = Matrix::zeros(n, n);
        for (k, &p) in qr.perm().iter().enumerate() {
            for i in 0..n {
                r_unperm[(i, p)] = qr.r()[(i, k)];
            }
        }
        // Jacobi on the conjugate transpose of a pivoted triangular factor
        // needs far fewer sweeps than on the factor itself.
        let inner = jacobi(&r_unperm.adjoint())?;
        let q = qr.thin_q(n);
        return Ok(Svd {
            u: q.matmul(&inner.v),
            s: inner.s,
            v: inner.u,
        });
    }
    jacobi(b)
}

fn jacobi(b: &Matrix) -> Result<Svd> {
    let (m, n) = (b.rows(), b.cols());
    let mut w = b.clone();
    let mut v = Matrix::identity(n);
    let eps = 4.0 * f64::EPSILON * (m as f64).sqrt().max(1.0);
    let mut sq = vec![0.0; n];
    // Columns below this squared norm are rounding noise; rotating them
    // cannot change any singular value by more than `ε‖B‖_F`.
    let negligible = (f64::EPSILON * b.frobenius_norm()).powi(2);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        // Squared norms are updated in closed form within a sweep and
        // refreshed at its start.
        for (j, q) in sq.iter_mut().enumerate() {
            *q = norm(w.col(j)).powi(2);
        }
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = sq[i];
                let beta = sq[j];
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = dot(w.col(i), w.col(j));
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phase = gamma / g;
                rotate(&mut w, i, j, c, s, phase);
                rotate(&mut v, i, j, c, s, phase);
                sq[i] = (alpha - t * g).max(0.0);
                sq[j] = beta + t * g;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numerical(format!(
            "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let s_raw: Vec<f64> = (0..n)
        .map(|j| {
            let x = norm(w.col(j));
            if x * x <= negligible {
                0.0
            } else {
                x
            }
        })
        .collect();
    order.sort_by(|&a, &b| s_raw[b].partial_cmp(&s_raw[a]).unwrap_or(std::cmp::Ordering::Equal));

    let mut u = Matrix::zeros(m, n);
    let mut vs = Matrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let sigma = s_raw[src];
        s.push(sigma);
        vs.col_mut(dst).copy_from_slice(v.col(src));
        if sigma > 0.0 {
            for (o, x) in u.col_mut(dst).iter_mut().zip(w.col(src)) {
                *o = x / sigma;
            }
        }
    }
    complete_basis(&mut u, &s);
    Ok(Svd { u, s, v: vs })
}

/// Applies the plane rotation to columns `i`, `j`:
/// `cᵢ ← c·cᵢ − s·conj(p)·cⱼ`, `cⱼ ← s·p·cᵢ + c·cⱼ`.
fn rotate(a: &mut Matrix, i: usize, j: usize, c: f64, s: f64, phase: C64) {
    let (ci, cj) = a.two_cols_mut(i, j);
    let pc = phase.conj() * s;
    let ps = phase * s;
    for (xi, xj) in ci.iter_mut().zip(cj.iter_mut()) {
        let (a0, b0) = (*xi, *xj);
        *xi = a0 * c - pc * b0;
        *xj = ps * a0 + b0 * c;
    }
}

/// Fills columns of `u` belonging to zero singular values with an
/// orthonormal completion so that `u` keeps orthonormal columns.
fn complete_basis(u: &mut Matrix, s: &[f64]) {
    let m = u.rows();
    for j in 0..s.len() {
        if s[j] > 0.0 {
            continue;
        }
        for e in 0..m {
            let mut cand = vec![C64::new(0.0, 0.0); m];
            cand[e] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for l in 0..u.cols() {
                    if l == j || (s[l] == 0.0 && l > j) {
                        continue;
                    }
                    let proj = dot(u.col(l), &cand);
                    let col = u.col(l).to_vec();
                    for (cv, uv) in cand.iter_mut().zip(&col) {
                        *cv -= proj * uv;
                    }
                }
            }
            let nn = norm(&cand);
            if nn > 1e-8 {
                for (o, x) in u.col_mut(j).iter_mut().zip(&cand) {
                    *o = x / nn;
                }
                break;
            }
        }
    }
}
