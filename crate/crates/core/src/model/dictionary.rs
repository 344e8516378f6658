use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use super::{SparseCoefficients, SupportSet};
use crate::error::{Error, Result};
use crate::linalg::svd::Svd;
use crate::linalg::{build_projector, OrthoProjector, Matrix, C64, DEFAULT_RANK_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DictionaryKind {
    RescaledIdentity,
    OvercompleteDft,
    Custom,
}

/// An `n × d` synthesis matrix with cached column norms.
#[derive(Debug, Clone)]
pub struct Dictionary {
    matrix: Matrix,
    kind: DictionaryKind,
    column_norms: Vec<f64>,
    row_space: OnceLock<Arc<Svd>>,
}

impl Dictionary {
    /// Wraps an arbitrary matrix. Zero columns are rejected.
    pub fn custom(matrix: Matrix) -> Result<Self> {
        Dictionary::with_kind(matrix, DictionaryKind::Custom)
    }

    fn with_kind(matrix: Matrix, kind: DictionaryKind) -> Result<Self> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::invalid("dictionary must be non-empty"));
        }
        if !matrix.all_finite() {
            return Err(Error::invalid("dictionary entries must be finite"));
        }
        let column_norms = matrix.column_norms();
        if let Some(j) = column_norms.iter().position(|&c| c == 0.0) {
            return Err(Error::invalid(format!("dictionary column {j} is zero")));
        }
        Ok(Dictionary {
            matrix,
            kind,
            column_norms,
            row_space: OnceLock::new(),
        })
    }

    /// `redundancy`× overcomplete DFT: column `j` has entries
    /// `exp(2πi·t·j/d)/√n`, `t = 0..n`, with `d = redundancy·n`.
    pub fn overcomplete_dft(n: usize, redundancy: usize) -> Result<Self> {
        if n < 2 || redundancy < 1 {
            return Err(Error::invalid("DFT dictionary needs n >= 2 and redundancy >= 1"));
        }
        let d = n
            .checked_mul(redundancy)
            .filter(|d| d.checked_mul(n).is_some())
            .ok_or_else(|| Error::invalid("dictionary size overflows"))?;
        let scale = 1.0 / (n as f64).sqrt();
        let matrix = Matrix::from_fn(n, d, |t, j| {
            // Reduce the phase index exactly before converting to floating point.
            let phase = ((t * j) % d) as f64 / d as f64;
            C64::from_polar(scale, 2.0 * PI * phase)
        });
        Dictionary::with_kind(matrix, DictionaryKind::OvercompleteDft)
    }

    /// `n × n` diagonal dictionary: the first `n/2` diagonal entries equal
    /// `scale`, the rest equal one.
    pub fn rescaled_identity(n: usize, scale: f64) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::invalid("rescaled identity needs an even, positive n"));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::invalid("scale must be positive"));
        }
        let diag: Vec<f64> = (0..n).map(|i| if i < n / 2 { scale } else { 1.0 }).collect();
        Dictionary::with_kind(Matrix::from_real_diagonal(&diag), DictionaryKind::RescaledIdentity)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn kind(&self) -> DictionaryKind {
        self.kind
    }

    pub fn column_norms(&self) -> &[f64] {
        &self.column_norms
    }

    /// Signal dimension.
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of atoms.
    pub fn d(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_real(&self) -> bool {
        self.matrix.is_real()
    }

    /// `D_Λ`.
    pub fn columns(&self, support: &SupportSet) -> Matrix {
        self.matrix.select_columns(support.as_slice())
    }

    /// `Dᴴ z`.
    pub fn correlate(&self, z: &[C64]) -> Vec<C64> {
        self.matrix.adjoint_mul_vec(z)
    }

    /// `|⟨dⱼ, z⟩| / ‖dⱼ‖` for every atom.
    pub fn normalized_scores(&self, z: &[C64]) -> Vec<f64> {
        self.correlate(z)
            .iter()
            .zip(&self.column_norms)
            .map(|(c, n)| c.norm() / n)
            .collect()
    }

    /// Projector onto `R(D_Λ)`; the zero projector for an empty support.
    pub fn projector(&self, support: &SupportSet) -> Result<OrthoProjector> {
        if support.bound() > self.d() {
            return Err(Error::invalid("support index exceeds dictionary size"));
        }
        if support.is_empty() {
            return Ok(OrthoProjector::zero(self.n()));
        }
        Ok(build_projector(&self.columns(support), DEFAULT_RANK_TOL)?.with_support(support.clone()))
    }

    /// `D α` for a sparse `α`.
    pub fn synthesize(&self, coeffs: &SparseCoefficients) -> Result<Vec<C64>> {
        synthesize(self, coeffs)
    }

    /// Thin SVD of `D`, computed once and shared by clones made afterwards.
    pub fn row_space_svd(&self) -> Result<Arc<Svd>> {
        if let Some(s) = self.row_space.get() {
            return Ok(s.clone());
        }
        let svd = Arc::new(Svd::new(&self.matrix)?);
        Ok(self.row_space.get_or_init(|| svd).clone())
    }
}

/// `x = Σ_{j ∈ supp} αⱼ dⱼ`.
pub fn synthesize(dict: &Dictionary, coeffs: &SparseCoefficients) -> Result<Vec<C64>> {
    if coeffs.ambient_dim() != dict.d() {
        return Err(Error::invalid(format!(
            "coefficients live in dimension {}, dictionary has {} atoms",
            coeffs.ambient_dim(),
            dict.d()
        )));
    }
    let mut x = vec![C64::new(0.0, 0.0); dict.n()];
    for (j, &a) in coeffs.support().iter().zip(coeffs.values()) {
        crate::linalg::axpy(a, dict.matrix().col(j), &mut x);
    }
    Ok(x)
}

/// Convenience constructor mirroring [`Dictionary::overcomplete_dft`].
pub fn build_overcomplete_dft(n: usize, redundancy: usize) -> Result<Dictionary> {
    Dictionary::overcomplete_dft(n, redundancy)
}

/// Convenience constructor mirroring [`Dictionary::rescaled_identity`].
pub fn build_rescaled_identity(n: usize, scale: f64) -> Result<Dictionary> {
    Dictionary::rescaled_identity(n, scale)
}
