//! Dense complex linear algebra.
//!
//! Everything here is deterministic given its inputs. The module provides a
//! column-major [`Matrix`], free functions on complex slices, rank-revealing
//! QR ([`qr`]), one-sided Jacobi SVD ([`svd`]), orthogonal projectors onto
//! column spans ([`projector`]), norm-constrained least squares
//! ([`tikhonov`]) and power-iteration norm estimates ([`power`]).

pub mod power;
pub mod projector;
pub mod qr;
pub mod svd;
pub mod tikhonov;

pub use num_complex::Complex64 as C64;
pub use power::operator_norm;
pub use projector::{apply_projector, build_projector, OrthoProjector, DEFAULT_RANK_TOL};
pub use tikhonov::{ridge_solve, tikhonov_lsq, RidgeSolution};

use crate::error::{Error, Result};

/// Dense complex matrix stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix with real diagonal entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from column-major entries, rejecting non-finite values.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if !all_finite(&data) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: &[C64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = Matrix::from_fn(rows, cols, |i, j| data[i * cols + j]);
        if !all_finite(&m.data) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            if c.len() != rows {
                return Err(Error::invalid("column length mismatch"));
            }
            data.extend_from_slice(c);
        }
        Matrix::from_col_major(rows, columns.len(), data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Column-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(self[(i, j)]);
            }
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn all_finite(&self) -> bool {
        all_finite(&self.data)
    }

    /// `self · x`.
    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension mismatch");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj.re == 0.0 && xj.im == 0.0 {
                continue;
            }
            axpy(xj, self.col(j), &mut out);
        }
        out
    }

    /// `selfᴴ · z`.
    pub fn adjoint_mul_vec(&self, z: &[C64]) -> Vec<C64> {
        assert_eq!(z.len(), self.rows, "adjoint_mul_vec dimension mismatch");
        (0..self.cols).map(|j| dot(self.col(j), z)).collect()
    }

    /// `self · other`.
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let bcol = other.col(j);
            let ocol = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for (l, &b) in bcol.iter().enumerate() {
                if b.re == 0.0 && b.im == 0.0 {
                    continue;
                }
                axpy(b, &self.data[l * self.rows..(l + 1) * self.rows], ocol);
            }
        }
        out
    }

    /// `selfᴴ · other`.
    pub fn adjoint_matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "adjoint_matmul dimension mismatch");
        Matrix::from_fn(self.cols, other.cols, |i, j| dot(self.col(i), other.col(j)))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Submatrix made of the listed columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for &j in idx {
            data.extend_from_slice(self.col(j));
        }
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Mutable views of two distinct columns, returned in `(i, j)` order.
    pub fn two_cols_mut(&mut self, i: usize, j: usize) -> (&mut [C64], &mut [C64]) {
        assert!(i != j, "two_cols_mut needs distinct columns");
        let rows = self.rows;
        let (lo, hi) = (i.min(j), i.max(j));
        let (left, right) = self.data.split_at_mut(hi * rows);
        let a = &mut left[lo * rows..(lo + 1) * rows];
        let b = &mut right[..rows];
        if i < j {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn swap_columns(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let rows = self.rows;
        let (lo, hi) = (i.min(j), i.max(j));
        let (left, right) = self.data.split_at_mut(hi * rows);
        left[lo * rows..(lo + 1) * rows].swap_with_slice(&mut right[..rows]);
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.cols).map(|j| norm(self.col(j))).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

pub fn all_finite(v: &[C64]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Embeds a real vector into complex space.
pub fn complexify(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

/// `aᴴ b`, conjugating the first argument.
#[inline]
pub fn dot(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    // Four independent accumulators keep the dependency chains short.
    let (mut r0, mut i0, mut r1, mut i1) = (0.0, 0.0, 0.0, 0.0);
    let chunks = a.len() / 2;
    for c in 0..chunks {
        let (x0, y0) = (a[2 * c], b[2 * c]);
        let (x1, y1) = (a[2 * c + 1], b[2 * c + 1]);
        r0 += x0.re * y0.re + x0.im * y0.im;
        i0 += x0.re * y0.im - x0.im * y0.re;
        r1 += x1.re * y1.re + x1.im * y1.im;
        i1 += x1.re * y1.im - x1.im * y1.re;
    }
    if a.len() % 2 == 1 {
        let (x, y) = (a[a.len() - 1], b[a.len() - 1]);
        r0 += x.re * y.re + x.im * y.im;
        i0 += x.re * y.im - x.im * y.re;
    }
    C64::new(r0 + r1, i0 + i1)
}

/// `y += alpha · x`.
#[inline]
pub fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        yi.re += alpha.re * xi.re - alpha.im * xi.im;
        yi.im += alpha.re * xi.im + alpha.im * xi.re;
    }
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Euclidean norm, scaled to avoid overflow on huge entries.
pub fn norm(v: &[C64]) -> f64 {
    let scale = v.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s: f64 = v
        .iter()
        .map(|z| {
            let (a, b) = (z.re / scale, z.im / scale);
            a * a + b * b
        })
        .sum();
    scale * s.sqrt()
}

pub fn norm_l1(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).sum()
}

pub fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|x| x * s).collect()
}

/// `‖a − b‖`.
pub fn dist(a: &[C64], b: &[C64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let d: Vec<C64> = sub(a, b);
    norm(&d)
}

/// Indices of the `k` largest scores, ties resolved toward the lower index.
/// The result is sorted increasingly.
pub fn top_k_indices(scores: &[f64], k: usize) -> Vec<usize> {
    let k = k.min(scores.len());
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // Stable sort on descending score keeps lower indices first among ties.
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut chosen: Vec<usize> = order.into_iter().take(k).collect();
    chosen.sort_unstable();
    chosen
}
