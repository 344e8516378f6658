use super::{norm, Matrix, C64};
use crate::error::{Error, Result};

/// Power-iteration estimate of the largest singular value of `m`.
///
/// Iterates on `MᴴM` from a fixed start vector, so the estimate is
/// deterministic and non-decreasing in `iters`.
pub fn operator_norm(m: &Matrix, iters: usize) -> Result<f64> {
    if m.is_empty() {
        return Err(Error::invalid("operator norm of an empty matrix"));
    }
    if iters < 10 {
        return Err(Error::invalid("operator norm needs at least 10 iterations"));
    }
    let n = m.cols();
    // Irrational phases keep the start vector away from any fixed subspace.
    let mut v: Vec<C64> = (0..n)
        .map(|j| {
            let t = j as f64 + 1.0;
            C64::new(1.0 + (t * 0.618_033_988_75).fract(), (t * 0.414_213_562_37).fract() - 0.5)
        })
        .collect();
    let vn = norm(&v);
    v.iter_mut().for_each(|x| *x /= vn);

    let mut estimate = 0.0;
    for _ in 0..iters {
        let mv = m.mul_vec(&v);
        let s = norm(&mv);
        if s == 0.0 {
            return Ok(estimate);
        }
        estimate = f64::max(estimate, s);
        let w = m.adjoint_mul_vec(&mv);
        let wn = norm(&w);
        if wn == 0.0 {
            return Ok(estimate);
        }
        v = w.into_iter().map(|x| x / wn).collect();
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_zero() {
        let d = Matrix::from_real_diagonal(&[3.0, 1.0]);
        assert!((operator_norm(&d, 100).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(operator_norm(&Matrix::zeros(3, 3), 10).unwrap(), 0.0);
        assert!(operator_norm(&Matrix::zeros(0, 0), 10).is_err());
        assert!(operator_norm(&d, 5).is_err());
    }
}
