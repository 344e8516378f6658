mod common;

use common::*;
use sscosamp::analysis::{
    drip_estimate, drip_exhaustive, mismatch, mismatch_objective, support_distortion, theorem1_constants,
    upper_rip_tail_check, MismatchMode,
};
use sscosamp::linalg::{operator_norm, C64};
use sscosamp::model::{
    draw_gaussian_sensing, draw_sparse_coefficients, Dictionary, SensingMatrix, SupportPattern, SupportSet,
    ValueField,
};
use sscosamp::projections::combinations;
use sscosamp::Matrix;

#[test]
fn constants_match_high_precision_values() {
    let t = theorem1_constants(0.029, 0.1, 1.0).unwrap();
    assert!((t.c1 - 0.496_907_293_467_021_8).abs() < 1e-12);
    assert!((t.c2 - 12.667_733_498_039_14).abs() < 1e-10);
}

#[test]
fn drip_of_gaussian_sensing_on_dft_is_below_one() {
    let dict = Dictionary::overcomplete_dft(256, 4).unwrap();
    let a = draw_gaussian_sensing(128, 256, 2024).unwrap();
    let est = drip_estimate(&a, &dict, 8, 1000, 7).unwrap();
    assert_eq!(est.valid_samples, 1000);
    assert!(est.delta_lower > 0.0 && est.delta_lower < 1.0, "{}", est.delta_lower);
    assert_eq!(est, drip_estimate(&a, &dict, 8, 1000, 7).unwrap());
}

#[test]
fn projected_gram_deviation_is_bounded_by_exhaustive_delta() {
    let dict = Dictionary::overcomplete_dft(6, 2).unwrap();
    for seed in 0..3u64 {
        let a = draw_gaussian_sensing(5, 6, seed).unwrap();
        let gram = a.matrix().adjoint_matmul(a.matrix());
        for size in 1..=3 {
            let delta = drip_exhaustive(&a, &dict, size).unwrap();
            for idx in combinations(12, size).step_by(7) {
                let s = SupportSet::new(idx).unwrap();
                let p = dict.projector(&s).unwrap().to_matrix();
                let m = p.matmul(&gram).matmul(&p).sub(&p);
                let gap = operator_norm(&m, 500).unwrap();
                assert!(gap <= delta + 1e-6, "{gap} > {delta}");
                assert!((gap - support_distortion(&a, &dict, &s).unwrap()).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn tail_inequality_holds_on_random_vectors() {
    let (m, n, k) = (64, 128, 8);
    let a = draw_gaussian_sensing(m, n, 99).unwrap();
    let ident = Dictionary::custom(Matrix::identity(n)).unwrap();
    let delta = drip_estimate(&a, &ident, k, 2000, 1).unwrap().delta_lower;
    for seed in 0..1000 {
        let z = random_vector(n, 5000 + seed);
        let t = upper_rip_tail_check(a.matrix(), k, &z, delta).unwrap();
        assert!(t.holds, "seed {seed}: slack {}", t.slack);
    }
    // A single basis vector against unit-norm columns.
    let cols = a.matrix().column_norms();
    let unit = SensingMatrix::from_matrix(Matrix::from_fn(m, n, |i, j| a.matrix()[(i, j)] / cols[j])).unwrap();
    let mut e = vec![C64::new(0.0, 0.0); n];
    e[3] = C64::new(1.0, 0.0);
    let t = upper_rip_tail_check(unit.matrix(), k, &e, delta).unwrap();
    assert!((t.lhs - 1.0).abs() < 1e-12);
    assert!(t.holds && (t.rhs - (1.0 + delta).sqrt() * (1.0 + 1.0 / (k as f64).sqrt())).abs() < 1e-12);
}

/// Compass search on the mixed objective over the coefficients of one
/// support, starting from the reported coefficients.
fn refine(dict: &Dictionary, x: &[C64], support: &SupportSet, start: &[C64], k: usize) -> f64 {
    let mut c = start.to_vec();
    let mut best = mismatch_objective(dict, x, support, &c, k);
    let mut step = 0.1 * c.iter().map(|v| v.norm()).fold(1e-3, f64::max);
    while step > 1e-10 {
        let mut improved = false;
        for i in 0..c.len() {
            for dir in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)] {
                let mut trial = c.clone();
                trial[i] += dir * step;
                let v = mismatch_objective(dict, x, support, &trial, k);
                if v < best {
                    best = v;
                    c = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

#[test]
fn mismatch_is_close_to_refined_minimum_for_near_sparse_signals() {
    let dict = Dictionary::custom(random_matrix(6, 10, 3)).unwrap();
    for seed in 0..5u64 {
        let alpha = draw_sparse_coefficients(10, 2, SupportPattern::UniformRandom, ValueField::Complex, seed).unwrap();
        let x0 = dict.synthesize(&alpha).unwrap();
        let p = random_vector(6, 40 + seed);
        let x: Vec<C64> = x0.iter().zip(&p).map(|(a, b)| a + b * 1e-3).collect();
        let rep = mismatch(&dict, &x, 2, MismatchMode::Exhaustive).unwrap();
        let refined = refine(&dict, &x, rep.minimizing_coeffs.support(), rep.minimizing_coeffs.values(), 2);
        assert!(refined <= rep.mismatch_value + 1e-15);
        assert!(rep.mismatch_value <= 1.1 * refined, "{} vs {refined}", rep.mismatch_value);
        let greedy = mismatch(&dict, &x, 2, MismatchMode::Greedy).unwrap();
        assert!(greedy.mismatch_value >= rep.mismatch_value - 1e-12);
    }
}
