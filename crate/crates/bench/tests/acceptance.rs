//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line per criterion and exits nonzero if any criterion fails.
//!
//! Pass criterion numbers as arguments to run a subset, for example
//! `cargo test -p sscosamp-bench --test acceptance -- 1 2 8`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_distr::StandardNormal;

use sscosamp::analysis::{
    corollary1_envelope, drip_estimate, drip_exhaustive, snr_db, support_distortion, theorem1_constants,
    upper_rip_tail_check, ENVELOPE_DELTA,
};
use sscosamp::linalg::svd::Svd;
use sscosamp::linalg::{build_projector, dist, dot, norm, norm_sqr, sub};
use sscosamp::model::{
    draw_gaussian_sensing, draw_sparse_coefficients, measure, rng_from_seed, Dictionary, SensingMatrix,
    SparseCoefficients, SupportPattern, SupportSet, ValueField,
};
use sscosamp::projections::{
    combinations, evaluate_projection_quality, optimal_projection, project_support, ProjectionBackend,
    EPS_DENOMINATOR_FLOOR,
};
use sscosamp::recovery::{
    cosamp_baseline, l1_baseline, omp_baseline, sscosamp, RecoveryTrace, SsCosampConfig,
};
use sscosamp::{Matrix, C64};
use sscosamp_bench::{run_sweep, SweepConfig, SweepOptions, SweepResult};

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn sweep(name: &str) -> Result<SweepResult, String> {
    let cfg = SweepConfig::load(&config_path(name)).map_err(|e| e.to_string())?;
    run_sweep(&cfg, SweepOptions::default()).map_err(|e| e.to_string())
}

fn rate(res: &SweepResult, alg: &str, m: usize) -> Result<f64, String> {
    res.point(alg, m)
        .map(|p| p.success_rate)
        .ok_or_else(|| format!("no result for {alg} at m = {m}"))
}

fn rates(res: &SweepResult, alg: &str) -> String {
    let parts: Vec<String> = res
        .summary
        .iter()
        .filter(|r| r.algorithm == alg)
        .map(|r| format!("{}:{:.2}", r.m, r.success_rate))
        .collect();
    format!("{alg}[{}]", parts.join(" "))
}

fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

fn gaussian_vector(rng: &mut impl Rng, len: usize) -> Vec<C64> {
    (0..len)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Orthonormal basis of the span of a random `n × cols` matrix.
fn orthonormal(rng: &mut impl Rng, n: usize, cols: usize) -> Matrix {
    let basis = build_projector(&gaussian_matrix(rng, n, cols), 0.0).unwrap().basis().clone();
    assert_eq!(basis.cols(), cols);
    basis
}

/// Noiseless instance with `m = n` and `A` an orthogonal matrix plus a small
/// perturbation, together with the exhaustively measured `δ_{4k}`.
struct NearIsometry {
    dict: Dictionary,
    a: SensingMatrix,
    alpha: SparseCoefficients,
    x: Vec<C64>,
    k: usize,
    delta4k: f64,
}

fn near_isometry(seed: u64) -> NearIsometry {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(4..=10usize);
    let d = rng.random_range(n..=12usize);
    let k = rng.random_range(1..=2usize);
    let dict = Dictionary::custom(gaussian_matrix(&mut rng, n, d)).unwrap();
    let q = orthonormal(&mut rng, n, n);
    let g = gaussian_matrix(&mut rng, n, n);
    let eta = 0.003 / g.frobenius_norm();
    let a = SensingMatrix::from_matrix(Matrix::from_fn(n, n, |i, j| q[(i, j)] + g[(i, j)] * eta)).unwrap();
    let alpha = draw_sparse_coefficients(d, k, SupportPattern::UniformRandom, ValueField::Complex, rng.random()).unwrap();
    let x = dict.synthesize(&alpha).unwrap();
    // Supports larger than d coincide with the full index set.
    let delta4k = drip_exhaustive(&a, &dict, (4 * k).min(d)).unwrap();
    NearIsometry {
        dict,
        a,
        alpha,
        x,
        k,
        delta4k,
    }
}

fn exhaustive_config(k: usize, bound: f64) -> SsCosampConfig {
    SsCosampConfig::new(k, ProjectionBackend::exhaustive(), bound)
}

fn c1_constants() -> Check {
    let t = theorem1_constants(0.029, 0.1, 1.0).map_err(|e| e.to_string())?;
    ensure(t.c1 <= 0.5 && (0.49..=0.50).contains(&t.c1), || format!("C1 = {}", t.c1))?;
    ensure(t.c2 <= 12.7 && (12.6..=12.7).contains(&t.c2), || format!("C2 = {}", t.c2))?;
    Ok(format!("C1 = {:.6}, C2 = {:.6}", t.c1, t.c2))
}

fn c2_coherence() -> Check {
    let n = 256;
    let dict = Dictionary::overcomplete_dft(n, 2).map_err(|e| e.to_string())?;
    let closed = 1.0 / (n as f64 * (std::f64::consts::PI / (2.0 * n as f64)).sin());
    let mut worst_gap = 0.0f64;
    let mut least = f64::INFINITY;
    for j in 0..dict.d() - 1 {
        let c = dot(dict.matrix().col(j), dict.matrix().col(j + 1)).norm()
            / (dict.column_norms()[j] * dict.column_norms()[j + 1]);
        least = least.min(c);
        worst_gap = worst_gap.max((c - closed).abs());
    }
    ensure(least > 0.63, || format!("adjacent coherence {least} <= 0.63"))?;
    ensure(worst_gap <= 1e-3, || format!("deviation from closed form {worst_gap}"))?;
    ensure(closed > 2.0 / std::f64::consts::PI, || "closed form below 2/pi".into())?;
    Ok(format!("min adjacent coherence {least:.6}, closed form {closed:.6}, max deviation {worst_gap:.1e}"))
}

fn c3_rescaled_identity() -> Check {
    let res = sweep("rescaled_identity.cfg")?;
    let ss = "sscosamp-threshold";
    for r in res.summary.iter().filter(|r| r.algorithm == ss && r.m >= 64) {
        ensure(r.success_rate >= 0.9, || format!("{ss} at m = {}: {}", r.m, r.success_rate))?;
    }
    ensure(rate(&res, ss, 48)? >= 0.5, || format!("{ss} at m = 48 below 0.5"))?;
    for r in res.summary.iter().filter(|r| r.algorithm == "cosamp" && r.m <= 128) {
        ensure(r.success_rate <= 0.05, || format!("cosamp at m = {}: {}", r.m, r.success_rate))?;
    }
    ensure(res.summary.iter().all(|r| r.trials == 100), || "expected 100 trials per point".into())?;
    Ok(format!("{}; {}", rates(&res, ss), rates(&res, "cosamp")))
}

fn c4_separated() -> Check {
    let res = sweep("dft_separated.cfg")?;
    ensure(res.summary.iter().all(|r| r.trials == 50), || "expected 50 trials per point".into())?;
    let (ss_omp, omp, ss_cosamp) = (
        rate(&res, "sscosamp-omp", 128)?,
        rate(&res, "omp", 128)?,
        rate(&res, "sscosamp-cosamp", 128)?,
    );
    ensure(ss_omp >= omp, || format!("SSCoSaMP-OMP {ss_omp} < OMP {omp}"))?;
    ensure(ss_cosamp <= ss_omp - 0.2, || format!("SSCoSaMP-CoSaMP {ss_cosamp} vs SSCoSaMP-OMP {ss_omp}"))?;
    Ok(["sscosamp-omp", "omp", "sscosamp-cosamp", "cosamp"]
        .map(|a| rates(&res, a))
        .join("; "))
}

fn c5_clustered() -> Check {
    let res = sweep("dft_clustered.cfg")?;
    ensure(res.summary.iter().all(|r| r.trials == 50), || "expected 50 trials per point".into())?;
    let (ss_cosamp, cosamp, ss_omp) = (
        rate(&res, "sscosamp-cosamp", 128)?,
        rate(&res, "cosamp", 128)?,
        rate(&res, "sscosamp-omp", 128)?,
    );
    ensure(ss_cosamp >= cosamp, || format!("SSCoSaMP-CoSaMP {ss_cosamp} < CoSaMP {cosamp}"))?;
    ensure(ss_omp <= ss_cosamp - 0.2, || format!("SSCoSaMP-OMP {ss_omp} vs SSCoSaMP-CoSaMP {ss_cosamp}"))?;
    Ok(["sscosamp-cosamp", "cosamp", "sscosamp-omp", "omp"]
        .map(|a| rates(&res, a))
        .join("; "))
}

fn c6_oracle_equivalence() -> Check {
    const INSTANCES: u64 = 200;
    let mut worst = 0.0f64;
    for seed in 0..INSTANCES {
        let mut rng = rng_from_seed(60_000 + seed);
        let n = rng.random_range(2..=10usize);
        let d = rng.random_range(1..=n);
        let k = rng.random_range(1..=2usize.min(d));
        let q = orthonormal(&mut rng, n, d);
        let scales: Vec<f64> = (0..d).map(|_| rng.random_range(0.5..3.0)).collect();
        let dict = Dictionary::custom(Matrix::from_fn(n, d, |i, j| q[(i, j)] * scales[j])).unwrap();
        let mut z = gaussian_vector(&mut rng, n);
        let zn = norm(&z);
        z.iter_mut().for_each(|v| *v /= zn);
        let (_, p_opt) = optimal_projection(&dict, &z, k).map_err(|e| e.to_string())?;
        let s = project_support(&ProjectionBackend::Threshold, &dict, &z, k).map_err(|e| e.to_string())?;
        let est = norm(&dict.projector(&s).unwrap().apply_complement(&z).unwrap());
        let gap = (est - dist(&z, &p_opt)).abs();
        worst = worst.max(gap);
        ensure(gap <= 1e-10, || format!("instance {seed}: residual gap {gap:.3e}"))?;
    }

    let mut min_snr = f64::INFINITY;
    let mut max_delta = 0.0f64;
    for seed in 0..INSTANCES {
        let inst = near_isometry(70_000 + seed);
        max_delta = max_delta.max(inst.delta4k);
        ensure(inst.delta4k < ENVELOPE_DELTA, || {
            format!("instance {seed}: measured delta4k {} not below 0.029", inst.delta4k)
        })?;
        let meas = measure(&inst.a, &inst.x, 0.0, 0).unwrap();
        let cfg = exhaustive_config(inst.k, 10.0 * inst.alpha.norm());
        let trace = sscosamp(&inst.a, &inst.dict, &meas, &cfg).map_err(|e| format!("instance {seed}: {e}"))?;
        let snr = snr_db(&inst.x, &trace.estimate).unwrap();
        min_snr = min_snr.min(snr);
        ensure(snr > 100.0, || format!("instance {seed}: SNR {snr:.1} dB"))?;
    }
    Ok(format!(
        "{INSTANCES} orthogonal-column instances, max residual gap {worst:.1e}; \
         {INSTANCES} exhaustive recoveries with max delta4k {max_delta:.4}, min SNR {min_snr:.1} dB"
    ))
}

fn residual_consistency(trace: &RecoveryTrace, a: &SensingMatrix, y: &[C64]) -> Result<f64, String> {
    let yn = norm(y);
    let mut worst = 0.0f64;
    for r in &trace.records {
        let direct = norm(&sub(y, &a.apply(&r.estimate)));
        let gap = (direct - r.residual_norm).abs() / yn;
        worst = worst.max(gap);
        ensure(gap <= 1e-10, || {
            format!("{} iteration {}: relative residual gap {gap:.3e}", trace.algorithm, r.iteration)
        })?;
    }
    Ok(worst)
}

fn c7_properties() -> Check {
    let mut notes = Vec::new();

    // Projectors: idempotence, contraction, Pythagoras.
    for seed in 0..500u64 {
        let mut rng = rng_from_seed(80_000 + seed);
        let n = rng.random_range(2..=10usize);
        let cols = rng.random_range(1..=6usize);
        let p = build_projector(&gaussian_matrix(&mut rng, n, cols), 1e-10).unwrap();
        let z = gaussian_vector(&mut rng, n);
        let zn = norm(&z);
        let pz = p.apply(&z).unwrap();
        let ppz = p.apply(&pz).unwrap();
        ensure(dist(&ppz, &pz) <= 1e-9 * zn, || format!("idempotence, seed {seed}"))?;
        ensure(norm(&pz) <= zn * (1.0 + 1e-9), || format!("contraction, seed {seed}"))?;
        let r = p.apply_complement(&z).unwrap();
        let pyth = (norm_sqr(&z) - norm_sqr(&pz) - norm_sqr(&r)).abs();
        ensure(pyth <= 1e-9 * norm_sqr(&z), || format!("Pythagoras, seed {seed}"))?;
    }
    notes.push("projector identities on 500 instances".to_string());

    // Nested projections: P_small P_big = P_small.
    for seed in 0..500u64 {
        let mut rng = rng_from_seed(81_000 + seed);
        let n = rng.random_range(3..=8usize);
        let d = 8;
        let dict = Dictionary::custom(gaussian_matrix(&mut rng, n, d)).unwrap();
        let big = SupportSet::from_unsorted((0..d).filter(|&j| j == 0 || rng.random_bool(0.5)).collect());
        let small = SupportSet::from_unsorted(big.iter().filter(|_| rng.random_bool(0.5)).collect());
        let z = gaussian_vector(&mut rng, n);
        let pa = dict.projector(&small).unwrap();
        let pb = dict.projector(&big).unwrap();
        let nested = pa.apply(&pb.apply(&z).unwrap()).unwrap();
        let gap = dist(&pa.apply(&z).unwrap(), &nested);
        ensure(gap <= 1e-9 * norm(&z), || format!("nested projection, seed {seed}: {gap:.3e}"))?;
    }
    notes.push("nested projections on 500 instances".to_string());

    // ‖P_Λ AᴴA P_Λ − P_Λ‖ ≤ δ_k for every support of size k.
    let mut checked = 0;
    let mut worst_margin = f64::INFINITY;
    for seed in 0..3u64 {
        let dict = Dictionary::overcomplete_dft(6, 2).unwrap();
        let a = draw_gaussian_sensing(5, 6, 90 + seed).unwrap();
        let gram = a.matrix().adjoint_matmul(a.matrix());
        for size in 1..=3 {
            let delta = drip_exhaustive(&a, &dict, size).unwrap();
            for idx in combinations(dict.d(), size) {
                let s = SupportSet::new(idx).unwrap();
                let p = dict.projector(&s).unwrap().to_matrix();
                let gap = Svd::singular_values(&p.matmul(&gram).matmul(&p).sub(&p)).unwrap()[0];
                worst_margin = worst_margin.min(delta + 1e-6 - gap);
                ensure(gap <= delta + 1e-6, || format!("operator bound: {gap} > {delta}"))?;
                let direct = support_distortion(&a, &dict, &s).unwrap();
                ensure((gap - direct).abs() <= 1e-9, || format!("distortion mismatch {gap} vs {direct}"))?;
                checked += 1;
            }
        }
    }
    notes.push(format!("operator bound on {checked} supports"));

    // ProjectionQuality agrees with its definition.
    let backends = [
        ProjectionBackend::Threshold,
        ProjectionBackend::Omp,
        ProjectionBackend::cosamp(),
        ProjectionBackend::l1(),
        ProjectionBackend::exhaustive(),
    ];
    for seed in 0..100u64 {
        let mut rng = rng_from_seed(82_000 + seed);
        let dict = Dictionary::custom(gaussian_matrix(&mut rng, 6, 10)).unwrap();
        let z = gaussian_vector(&mut rng, 6);
        let k = rng.random_range(1..=3usize);
        for b in &backends {
            let q = evaluate_projection_quality(&dict, &z, k, b).map_err(|e| e.to_string())?;
            let (opt_s, p_opt) = optimal_projection(&dict, &z, k).unwrap();
            let p_est = dict.projector(&q.est_support).unwrap().apply(&z).unwrap();
            let disc = dist(&p_opt, &p_est);
            let floor = EPS_DENOMINATOR_FLOOR * norm(&z);
            let expect = |den: f64| {
                if disc == 0.0 || q.discrepancy == 0.0 {
                    0.0
                } else if den < floor {
                    f64::INFINITY
                } else {
                    disc / den
                }
            };
            let close = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-9 * b.abs().max(1e-12);
            ensure(q.opt_support == opt_s, || format!("optimal support differs, seed {seed}"))?;
            ensure(close(q.discrepancy, disc) || disc <= 1e-12, || format!("discrepancy, seed {seed}"))?;
            ensure(close(q.eps1, expect(norm(&p_opt))) || disc <= 1e-12, || format!("eps1, seed {seed}"))?;
            ensure(close(q.eps2, expect(dist(&z, &p_opt))) || disc <= 1e-12, || format!("eps2, seed {seed}"))?;
            ensure(q.satisfies_bound(1e-12), || format!("bound violated, seed {seed}, {}", b.name()))?;
            ensure(q.est_residual >= q.opt_residual - 1e-10, || format!("beats the oracle, seed {seed}"))?;
        }
    }
    notes.push("quality definitions on 500 evaluations".to_string());

    // Trace residuals match ‖y − A x̂ˡ‖.
    let mut worst = 0.0f64;
    let dict = Dictionary::overcomplete_dft(8, 2).unwrap();
    for seed in 0..20u64 {
        let a = draw_gaussian_sensing(6, 8, 83_000 + seed).unwrap();
        let alpha =
            draw_sparse_coefficients(16, 2, SupportPattern::UniformRandom, ValueField::Complex, 84_000 + seed).unwrap();
        let x = dict.synthesize(&alpha).unwrap();
        let noise = if seed % 2 == 0 { 0.0 } else { 1e-2 * norm(&x) };
        let meas = measure(&a, &x, noise, 85_000 + seed).unwrap();
        let bound = 10.0 * alpha.norm();
        let mut traces = Vec::new();
        for b in &backends {
            traces.push(sscosamp(&a, &dict, &meas, &SsCosampConfig::new(2, *b, bound)).map_err(|e| e.to_string())?);
        }
        traces.push(cosamp_baseline(&a, &dict, &meas, 2, 50, bound).map_err(|e| e.to_string())?);
        traces.push(omp_baseline(&a, &dict, &meas, 2).map_err(|e| e.to_string())?);
        traces.push(l1_baseline(&a, &dict, &meas, 2, 1e-7).map_err(|e| e.to_string())?);
        for t in &traces {
            worst = worst.max(residual_consistency(t, &a, &meas.y)?);
        }
    }
    notes.push(format!("trace residuals within {worst:.1e}"));

    // Decay envelope on traces whose preconditions were verified.
    let mut qualifying = 0;
    for seed in 0..100u64 {
        let inst = near_isometry(86_000 + seed);
        if inst.delta4k >= ENVELOPE_DELTA {
            continue;
        }
        let noise = if seed % 2 == 0 { 0.0 } else { 1e-3 * norm(&inst.x) };
        let meas = measure(&inst.a, &inst.x, noise, seed).unwrap();
        let trace = sscosamp(&inst.a, &inst.dict, &meas, &exhaustive_config(inst.k, 10.0 * inst.alpha.norm()))
            .map_err(|e| e.to_string())?;
        let env = corollary1_envelope(&trace, &inst.x, noise).with_preconditions(inst.delta4k, true);
        ensure(!env.advisory, || "preconditions not confirmed".into())?;
        ensure(env.holds, || format!("envelope violated, seed {seed}: {:?}", env.slack))?;
        qualifying += 1;
    }
    ensure(qualifying >= 50, || format!("only {qualifying} qualifying traces"))?;
    notes.push(format!("envelope on {qualifying} traces"));

    // ‖Az‖ ≤ √(1+δ)(‖z‖ + ‖z‖₁/√k).
    let (m, n, k) = (64, 128, 8);
    let a = draw_gaussian_sensing(m, n, 99).unwrap();
    let ident = Dictionary::custom(Matrix::identity(n)).unwrap();
    let delta = drip_estimate(&a, &ident, k, 2000, 1).unwrap().delta_lower;
    let mut min_slack = f64::INFINITY;
    for seed in 0..1000u64 {
        let mut rng = rng_from_seed(87_000 + seed);
        let z = gaussian_vector(&mut rng, n);
        let t = upper_rip_tail_check(a.matrix(), k, &z, delta).unwrap();
        min_slack = min_slack.min(t.slack / t.rhs);
        ensure(t.holds, || format!("tail inequality, vector {seed}: slack {}", t.slack))?;
    }
    notes.push(format!("tail inequality on 1000 vectors (min relative slack {min_slack:.3})"));

    Ok(notes.join("; "))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sscosamp-bench"))
}

/// Runs the binary with `args`, returning stdout and the contents of the
/// files it wrote into a fresh directory.
fn invoke(args: &[&str], out_name: Option<&str>) -> Result<(Vec<u8>, Vec<Vec<u8>>), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut cmd = bin();
    cmd.args(args);
    if let Some(name) = out_name {
        cmd.arg("--out").arg(dir.path().join(name));
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    let mut names: Vec<PathBuf> = std::fs::read_dir(dir.path())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    let files = names.iter().map(|p| std::fs::read(p).unwrap()).collect();
    Ok((out.stdout, files))
}

fn c8_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let sweep_cfg = dir.path().join("sweep.cfg");
    std::fs::write(
        &sweep_cfg,
        "scenario = dft_separated\nn = 32\nk = 2\nm_grid = 8, 16\ntrials_per_point = 3\n\
         algorithms = sscosamp-omp, sscosamp-cosamp, omp, cosamp, l1\n",
    )
    .map_err(|e| e.to_string())?;
    let sweep_cfg = sweep_cfg.to_string_lossy().into_owned();
    let study_cfg = dir.path().join("study.cfg");
    std::fs::write(&study_cfg, "trials = 10\npatterns = uniform, separated, clustered, hybrid\n")
        .map_err(|e| e.to_string())?;
    let study_cfg = study_cfg.to_string_lossy().into_owned();
    let drip_cfg = dir.path().join("drip.cfg");
    std::fs::write(&drip_cfg, "n = 32\nm_grid = 8, 16\nk = 2\ntrials = 200\n").map_err(|e| e.to_string())?;
    let drip_cfg = drip_cfg.to_string_lossy().into_owned();

    let runs: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["sweep", "--config", &sweep_cfg, "--seed", "5"], Some("sweep.csv")),
        (vec!["sweep", "--config", &sweep_cfg, "--seed", "5", "--format", "json"], Some("sweep.json")),
        (vec!["sweep", "--config", &sweep_cfg, "--seed", "5"], None),
        (vec!["project-eval", "--config", &study_cfg, "--seed", "5"], Some("study.csv")),
        (vec!["drip", "--config", &drip_cfg, "--seed", "5"], None),
        (vec!["recover", "--seed", "7"], None),
        (vec!["recover", "--seed", "7", "--format", "json"], None),
        (vec!["constants", "--delta", "0.029", "--eps1", "0.1", "--eps2", "1"], None),
    ];
    let mut compared = 0;
    for (args, out) in &runs {
        let first = invoke(args, *out)?;
        let second = invoke(args, *out)?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
        ensure(!first.0.is_empty() || !first.1.is_empty(), || format!("{args:?} produced no output"))?;
        compared += 1;
    }
    let other = invoke(&["sweep", "--config", &sweep_cfg, "--seed", "6"], None)?;
    let base = invoke(&["sweep", "--config", &sweep_cfg, "--seed", "5"], None)?;
    ensure(other != base, || "changing the seed did not change the output".into())?;

    Ok(format!("{compared} invocations byte-identical across runs"))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "error-bound constants",
            budget: Duration::from_secs(1),
            run: c1_constants,
        },
        Criterion {
            id: 2,
            name: "DFT adjacent coherence",
            budget: Duration::from_secs(1),
            run: c2_coherence,
        },
        Criterion {
            id: 3,
            name: "rescaled identity sweep",
            budget: Duration::from_secs(600),
            run: c3_rescaled_identity,
        },
        Criterion {
            id: 4,
            name: "separated DFT ordering",
            budget: Duration::from_secs(1800),
            run: c4_separated,
        },
        Criterion {
            id: 5,
            name: "clustered DFT ordering",
            budget: Duration::from_secs(1800),
            run: c5_clustered,
        },
        Criterion {
            id: 6,
            name: "oracle equivalence",
            budget: Duration::from_secs(300),
            run: c6_oracle_equivalence,
        },
        Criterion {
            id: 7,
            name: "property suites",
            budget: Duration::from_secs(300),
            run: c7_properties,
        },
        Criterion {
            id: 8,
            name: "CLI determinism",
            budget: Duration::from_secs(300),
            run: c8_determinism,
        },
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();

    let mut failures = 0;
    for c in criteria.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= c.budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; runtime {elapsed:.1?} exceeds the {:?} budget", c.budget))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({}) [{:.1?}]: {detail}", c.id, c.name, elapsed),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({}) [{:.1?}]: {detail}", c.id, c.name, elapsed);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
