//! Orthogonal projectors onto column spans.

use super::qr::PivotedQr;
use super::{axpy, dot, Matrix, C64};
use crate::error::{Error, Result};
use crate::model::SupportSet;

/// Pivots below this fraction of the largest pivot are treated as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Orthogonal projector `P = Q Qᴴ` onto the span of a set of columns.
#[derive(Debug, Clone)]
pub struct OrthoProjector {
    basis: Matrix,
    source_support: SupportSet,
}

impl OrthoProjector {
    /// Orthonormal basis of the span, `n × rank`.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Dictionary support the span was built from; empty when the projector
    /// was built from a bare matrix.
    pub fn source_support(&self) -> &SupportSet {
        &self.source_support
    }

    /// Projector onto `{0}` in dimension `n`.
    pub fn zero(n: usize) -> Self {
        OrthoProjector {
            basis: Matrix::zeros(n, 0),
            source_support: SupportSet::empty(),
        }
    }

    pub(crate) fn with_support(mut self, support: SupportSet) -> Self {
        self.source_support = support;
        self
    }

    /// `P z`.
    pub fn apply(&self, z: &[C64]) -> Result<Vec<C64>> {
        if z.len() != self.dim() {
            return Err(Error::invalid(format!(
                "projector acts on length {}, got {}",
                self.dim(),
                z.len()
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); z.len()];
        for j in 0..self.rank() {
            let q = self.basis.col(j);
            axpy(dot(q, z), q, &mut out);
        }
        Ok(out)
    }

    /// `z − P z`.
    pub fn apply_complement(&self, z: &[C64]) -> Result<Vec<C64>> {
        let p = self.apply(z)?;
        Ok(z.iter().zip(&p).map(|(a, b)| a - b).collect())
    }

    /// The dense `n × n` projection matrix.
    pub fn to_matrix(&self) -> Matrix {
        self.basis.matmul(&self.basis.adjoint())
    }
}

/// Builds the projector onto the column span of `dict_cols` using pivoted
/// Householder QR. Columns whose pivot falls below `rank_tol` relative to the
/// largest pivot are dropped.
pub fn build_projector(dict_cols: &Matrix, rank_tol: f64) -> Result<OrthoProjector> {
    if dict_cols.cols() == 0 || dict_cols.rows() == 0 {
        return Err(Error::invalid("projector needs at least one column"));
    }
    if !(rank_tol >= 0.0) {
        return Err(Error::invalid("rank tolerance must be non-negative"));
    }
    let qr = PivotedQr::new(dict_cols, rank_tol);
    Ok(OrthoProjector {
        basis: qr.thin_q(qr.rank()),
        source_support: SupportSet::empty(),
    })
}

/// `P z`.
pub fn apply_projector(p: &OrthoProjector, z: &[C64]) -> Result<Vec<C64>> {
    p.apply(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn axis_aligned_span() {
        let d = Matrix::from_columns(3, &[vec![c(2.0), c(0.0), c(0.0)]]).unwrap();
        let p = build_projector(&d, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(p.rank(), 1);
        let out = p.apply(&[c(1.0), c(1.0), c(1.0)]).unwrap();
        assert!(norm(&[out[0] - c(1.0), out[1], out[2]]) < 1e-15);
    }

    #[test]
    fn duplicate_columns_collapse_to_rank_one() {
        let s = 0.5f64.sqrt();
        let col = vec![c(s), c(s)];
        let d = Matrix::from_columns(2, &[col.clone(), col]).unwrap();
        assert_eq!(build_projector(&d, DEFAULT_RANK_TOL).unwrap().rank(), 1);
    }

    #[test]
    fn span_of_e1_and_zero_vector() {
        let d = Matrix::from_columns(2, &[vec![c(1.0), c(0.0)]]).unwrap();
        let p = build_projector(&d, DEFAULT_RANK_TOL).unwrap();
        let out = p.apply(&[c(3.0), c(4.0)]).unwrap();
        assert_eq!(out, vec![c(3.0), c(0.0)]);
        assert_eq!(p.apply(&[c(0.0), c(0.0)]).unwrap(), vec![c(0.0), c(0.0)]);
        assert!(p.apply(&[c(0.0)]).is_err());
    }

    #[test]
    fn rejects_empty_input() {
        assert!(matches!(
            build_projector(&Matrix::zeros(3, 0), DEFAULT_RANK_TOL),
            Err(Error::InvalidInput(_))
        ));
    }
}
