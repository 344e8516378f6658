#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;
use sscosamp::model::rng_from_seed;
use sscosamp::{Matrix, C64};

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    Matrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_real_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = rng_from_seed(seed);
    Matrix::from_fn(rows, cols, |_, _| C64::new(rng.sample(StandardNormal), 0.0))
}

pub fn random_vector(len: usize, seed: u64) -> Vec<C64> {
    let mut rng = rng_from_seed(seed);
    (0..len)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

pub fn to_na(m: &Matrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_na(m: &DMatrix<Complex<f64>>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Random `n × d` matrix with mutually orthogonal columns of varying norm
/// (`d ≤ n`).
pub fn orthogonal_columns(n: usize, d: usize, seed: u64) -> Matrix {
    let q = to_na(&random_matrix(n, d, seed)).qr().q();
    Matrix::from_fn(n, d, |i, j| q[(i, j)] * (1.0 + j as f64 * 0.7))
}
