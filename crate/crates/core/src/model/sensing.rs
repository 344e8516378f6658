use rand_distr::StandardNormal;
use rand::Rng;

use super::seed::rng_from_seed;
use crate::error::{Error, Result};
use crate::linalg::{all_finite, norm, Matrix, C64};

/// An `m × n` measurement operator and the seed it was drawn from.
#[derive(Debug, Clone)]
pub struct SensingMatrix {
    matrix: Matrix,
    seed: Option<u64>,
}

impl SensingMatrix {
    /// Wraps an explicit operator.
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::invalid("sensing matrix must be non-empty"));
        }
        if !matrix.all_finite() {
            return Err(Error::invalid("sensing matrix entries must be finite"));
        }
        Ok(SensingMatrix { matrix, seed: None })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Seed used to draw the matrix, if it was drawn at random.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.matrix.mul_vec(x)
    }

    pub fn adjoint_apply(&self, r: &[C64]) -> Vec<C64> {
        self.matrix.adjoint_mul_vec(r)
    }
}

/// `y = A x + e` together with the injected noise norm.
#[derive(Debug, Clone)]
pub struct Measurements {
    pub y: Vec<C64>,
    pub noise_norm: f64,
}

/// Real Gaussian `m × n` matrix with entries of variance `1/m`.
pub fn draw_gaussian_sensing(m: usize, n: usize, seed: u64) -> Result<SensingMatrix> {
    if m == 0 || m > n {
        return Err(Error::invalid(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let mut rng = rng_from_seed(seed);
    let sd = 1.0 / (m as f64).sqrt();
    let data = (0..m * n)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            C64::new(g * sd, 0.0)
        })
        .collect();
    Ok(SensingMatrix {
        matrix: Matrix::from_col_major(m, n, data)?,
        seed: Some(seed),
    })
}

/// Forms `y = A x + e` with `‖e‖ = noise_norm`. The noise direction is
/// Gaussian, real when `x` is real and circular complex otherwise.
pub fn measure(a: &SensingMatrix, x: &[C64], noise_norm: f64, seed: u64) -> Result<Measurements> {
    if x.len() != a.n() {
        return Err(Error::invalid(format!(
            "signal has length {}, sensing matrix expects {}",
            x.len(),
            a.n()
        )));
    }
    if !(noise_norm >= 0.0) || !noise_norm.is_finite() {
        return Err(Error::invalid("noise norm must be finite and non-negative"));
    }
    if !all_finite(x) {
        return Err(Error::invalid("signal entries must be finite"));
    }
    let mut y = a.apply(x);
    if noise_norm > 0.0 {
        let real = x.iter().all(|v| v.im == 0.0);
        let mut rng = rng_from_seed(seed);
        let mut e: Vec<C64> = (0..a.m())
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = if real { 0.0 } else { rng.sample(StandardNormal) };
                C64::new(re, im)
            })
            .collect();
        let en = norm(&e);
        if en == 0.0 {
            return Err(Error::numerical("drew a zero noise direction"));
        }
        for v in &mut e {
            *v *= noise_norm / en;
        }
        for (yi, ei) in y.iter_mut().zip(&e) {
            *yi += ei;
        }
    }
    Ok(Measurements { y, noise_norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_is_deterministic() {
        let a = draw_gaussian_sensing(4, 4, 11).unwrap();
        let b = draw_gaussian_sensing(4, 4, 11).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.seed(), Some(11));
        assert!(draw_gaussian_sensing(5, 4, 1).is_err());
        assert!(draw_gaussian_sensing(0, 4, 1).is_err());
    }

    #[test]
    fn gaussian_statistics() {
        let (m, n) = (128, 256);
        let a = draw_gaussian_sensing(m, n, 3).unwrap();
        let entries = a.matrix().as_slice();
        let mean = entries.iter().map(|v| v.re).sum::<f64>() / entries.len() as f64;
        let se = (1.0 / m as f64).sqrt() / (entries.len() as f64).sqrt();
        assert!(mean.abs() < 5.0 * se);
        let avg_sq = a.matrix().column_norms().iter().map(|c| c * c).sum::<f64>() / n as f64;
        assert!((avg_sq - 1.0).abs() < 0.1);
    }

    #[test]
    fn noiseless_and_pure_noise() {
        let a = draw_gaussian_sensing(6, 8, 1).unwrap();
        let x: Vec<C64> = (0..8).map(|i| C64::new(i as f64, -1.0)).collect();
        let meas = measure(&a, &x, 0.0, 5).unwrap();
        assert_eq!(meas.y, a.apply(&x));
        let zero = vec![C64::new(0.0, 0.0); 8];
        let noisy = measure(&a, &zero, 1.0, 5).unwrap();
        assert!((norm(&noisy.y) - 1.0).abs() < 1e-12);
        assert!(measure(&a, &zero[..7], 0.0, 5).is_err());
    }

    #[test]
    fn injected_noise_has_requested_norm() {
        let a = draw_gaussian_sensing(10, 20, 2).unwrap();
        let x: Vec<C64> = (0..20).map(|i| C64::new((i as f64).sin(), (i as f64).cos())).collect();
        let clean = a.apply(&x);
        let meas = measure(&a, &x, 0.37, 9).unwrap();
        let e: Vec<C64> = meas.y.iter().zip(&clean).map(|(p, q)| p - q).collect();
        assert!((norm(&e) - 0.37).abs() < 1e-12);
        assert_eq!(meas.noise_norm, 0.37);
    }
}
