//! Cross-checks the exact circle invariants against a numerically
//! independent path: dense sampling of eigenvalue signs of the Hermitian
//! form, built with plain f64 trigonometry and nalgebra's eigensolver.

use nalgebra::{Complex, DMatrix};
use num::ToPrimitive;
use rho_core::seifert::registry;
use rho_core::seifert::{rho0, signature_function, SeifertMatrix};

fn rational_f64(x: &num::BigRational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Signature of (1-w)V + (1-conj w)V^T at w = exp(2 pi i t), by counting
/// eigenvalue signs numerically.
fn sampled_signature(v: &SeifertMatrix, t: f64) -> i64 {
    let n = v.size();
    if n == 0 {
        return 0;
    }
    let (s, c) = (2.0 * std::f64::consts::PI * t).sin_cos();
    let a = Complex::new(1.0 - c, -s); // 1 - w
    let b = a.conj();
    let mut h = DMatrix::<Complex<f64>>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = a * Complex::new(v.entry(i, j) as f64, 0.0)
                + b * Complex::new(v.entry(j, i) as f64, 0.0);
        }
    }
    let eigs = h.symmetric_eigen().eigenvalues;
    let scale = eigs.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let cut = 1e-9 * scale;
    let pos = eigs.iter().filter(|x| **x > cut).count() as i64;
    let neg = eigs.iter().filter(|x| **x < -cut).count() as i64;
    pos - neg
}

/// Midpoint-rule average of the sampled signature over the circle.
fn sampled_rho0(v: &SeifertMatrix, samples: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..samples {
        let t = (k as f64 + 0.5) / samples as f64;
        acc += sampled_signature(v, t) as f64;
    }
    acc / samples as f64
}

fn check(v: &SeifertMatrix, samples: usize, tol: f64) {
    let exact = rho0(v).unwrap();
    let approx = sampled_rho0(v, samples);
    let err = (rational_f64(&exact.value) - approx).abs();
    assert!(
        err < tol + rational_f64(&exact.error_bound),
        "rho0 mismatch: exact {} vs sampled {approx} (err {err})",
        exact.value
    );
}

#[test]
fn named_knots_match_dense_sampling() {
    check(&registry::unknot(), 2_000, 1e-6);
    check(&registry::trefoil(), 30_000, 1e-3);
    check(&registry::figure_eight(), 30_000, 1e-3);
    check(&registry::trefoil().mirror(), 30_000, 1e-3);
}

#[test]
fn twist_knots_match_dense_sampling() {
    for k in [-4i64, -2, 2, 5] {
        check(&registry::twist_knot(k), 30_000, 1e-3);
    }
}

#[test]
fn connected_sums_match_dense_sampling() {
    let granny = registry::trefoil().connected_sum(&registry::trefoil());
    check(&granny, 30_000, 2e-3);
    let mixed = registry::trefoil().connected_sum(&registry::twist_knot(-2));
    check(&mixed, 30_000, 2e-3);
}

#[test]
fn random_corpus_matches_dense_sampling() {
    for v in registry::random_corpus(42, 6, 2) {
        check(&v, 20_000, 4e-3);
    }
}

#[test]
fn arc_values_match_pointwise_samples() {
    for v in registry::random_corpus(7, 8, 2) {
        let sf = signature_function(&v).unwrap();
        for t_num in [3i64, 23, 61, 89] {
            let t = num::BigRational::new(t_num.into(), 128.into());
            if let Some(val) = sf.value_at(&t) {
                let got = sampled_signature(&v, rational_f64(&t));
                assert_eq!(val, got, "arc value mismatch at t = {t_num}/128");
            }
        }
    }
}
