//! Householder QR with column pivoting.
//!
//! Factors `B·P = Q·R` where `P` permutes columns so that the diagonal of `R`
//! is non-increasing in modulus. The factorization stops once the remaining
//! columns fall below the rank tolerance relative to the first pivot, which
//! makes it rank revealing for the severely ill-conditioned column subsets
//! of coherent dictionaries.

use super::{axpy, dot, norm, Matrix, C64};

#[derive(Debug, Clone)]
pub struct PivotedQr {
    rows: usize,
    cols: usize,
    /// Unit Householder vectors; reflector `k` acts on rows `k..rows`.
    reflectors: Vec<Vec<C64>>,
    /// Upper trapezoidal factor, `min(rows, cols) × cols`, columns permuted.
    r: Matrix,
    perm: Vec<usize>,
    rank: usize,
}

impl PivotedQr {
    /// Factors `b`. Pivots whose modulus falls below `rank_tol · |r₀₀|` are
    /// treated as zero and end the rank count.
    pub fn new(b: &Matrix, rank_tol: f64) -> Self {
        let (m, n) = (b.rows(), b.cols());
        let steps = m.min(n);
        let mut a = b.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut reflectors = Vec::with_capacity(steps);
        let mut rank = 0;
        let mut first_pivot = 0.0;
        let mut rank_closed = false;
        let mut col_norms: Vec<f64> = (0..n).map(|j| norm(a.col(j))).collect();

        for k in 0..steps {
            // Recompute trailing norms exactly; cheap next to the update.
            for j in k..n {
                col_norms[j] = norm(&a.col(j)[k..]);
            }
            let mut p = k;
            for j in k + 1..n {
                if col_norms[j] > col_norms[p] {
                    p = j;
                }
            }
            if p != k {
                a.swap_columns(k, p);
                perm.swap(k, p);
                col_norms.swap(k, p);
            }

            let xnorm = col_norms[k];
            if k == 0 {
                first_pivot = xnorm;
            }
            if !rank_closed {
                if xnorm > rank_tol * first_pivot && xnorm > 0.0 {
                    rank += 1;
                } else {
                    rank_closed = true;
                }
            }

            let x0 = a[(k, k)];
            let mut u: Vec<C64> = a.col(k)[k..].to_vec();
            if xnorm == 0.0 {
                reflectors.push(vec![C64::new(0.0, 0.0); m - k]);
                continue;
            }
            let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
            u[0] += phase * xnorm;
            let unorm = norm(&u);
            for ui in u.iter_mut() {
                *ui /= unorm;
            }
            // H x = −phase·‖x‖·e₁
            {
                let col = a.col_mut(k);
                col[k] = -phase * xnorm;
                for v in col[k + 1..].iter_mut() {
                    *v = C64::new(0.0, 0.0);
                }
            }
            for j in k + 1..n {
                let col = &mut a.col_mut(j)[k..];
                let s = dot(&u, col) * 2.0;
                axpy(-s, &u, col);
            }
            reflectors.push(u);
        }

        let r = Matrix::from_fn(steps, n, |i, j| if i <= j { a[(i, j)] } else { C64::new(0.0, 0.0) });
        PivotedQr {
            rows: m,
            cols: n,
            reflectors,
            r,
            perm,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Column permutation: factor column `i` is input column `perm()[i]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// The permuted upper trapezoidal factor.
    pub fn r(&self) -> &Matrix {
        &self.r
    }

    /// Moduli of the diagonal of `R`.
    pub fn pivots(&self) -> Vec<f64> {
        (0..self.r.rows()).map(|i| self.r[(i, i)].norm()).collect()
    }

    /// `Qᴴ y` for the full unitary `Q`.
    pub fn apply_qh(&self, y: &[C64]) -> Vec<C64> {
        assert_eq!(y.len(), self.rows);
        let mut out = y.to_vec();
        for (k, u) in self.reflectors.iter().enumerate() {
            let tail = &mut out[k..];
            let s = dot(u, tail) * 2.0;
            axpy(-s, u, tail);
        }
        out
    }

    /// `Q x` where `x` has `rows` entries.
    pub fn apply_q(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.rows);
        let mut out = x.to_vec();
        for (k, u) in self.reflectors.iter().enumerate().rev() {
            let tail = &mut out[k..];
            let s = dot(u, tail) * 2.0;
            axpy(-s, u, tail);
        }
        out
    }

    /// First `count` columns of `Q`.
    pub fn thin_q(&self, count: usize) -> Matrix {
        assert!(count <= self.rows);
        let mut q = Matrix::zeros(self.rows, count);
        for j in 0..count {
            let mut e = vec![C64::new(0.0, 0.0); self.rows];
            e[j] = C64::new(1.0, 0.0);
            q.col_mut(j).copy_from_slice(&self.apply_q(&e));
        }
        q
    }

    /// Basic least-squares solution of `min ‖y − B β‖` using the leading
    /// `rank` columns; coefficients of the dropped columns are zero. Entries
    /// are returned in the original column order.
    pub fn solve_least_squares(&self, y: &[C64]) -> Vec<C64> {
        let z = self.apply_qh(y);
        let r = self.rank;
        let mut w = vec![C64::new(0.0, 0.0); r];
        for i in (0..r).rev() {
            let mut acc = z[i];
            for j in i + 1..r {
                acc -= self.r[(i, j)] * w[j];
            }
            w[i] = acc / self.r[(i, i)];
        }
        let mut beta = vec![C64::new(0.0, 0.0); self.cols];
        for i in 0..r {
            beta[self.perm[i]] = w[i];
        }
        beta
    }
}
