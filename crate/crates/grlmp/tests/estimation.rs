//! Estimator checks: the closed form against a brute-force likelihood
//! maximizer, and synthetic-recovery runs against the samplers.

mod common;

use grlmp::{
    fit_bivariate, fit_univariate, AssocOp, BivariateGrlmp, BuiltinOpId, GrlmpDistribution,
    UpperBound,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn log_likelihood(data: &[f64], op: &AssocOp, c: f64, b: f64) -> f64 {
    let g_b = op.g_at(b).unwrap();
    data.iter()
        .map(|&x| {
            let gx = op.g_at(x).unwrap();
            c.ln() + op.g_prime(x).unwrap().ln() + c * (gx - g_b)
        })
        .sum()
}

#[test]
fn closed_form_equals_numeric_maximizer() {
    let cases = [
        (BuiltinOpId::Addition, 0.0),
        (BuiltinOpId::Multiplication, 2.0),
        (BuiltinOpId::ShiftedMultiplication, 1.0),
        (BuiltinOpId::NegQuadratic, 0.0),
    ];
    for (seed, (id, b)) in cases.into_iter().enumerate() {
        let op = AssocOp::builtin(id);
        let d = GrlmpDistribution::new(op.clone(), 1.7, b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed as u64);
        let data = d.sample(&mut rng, 500).unwrap();
        let fit = fit_univariate(&data, &op, UpperBound::Known(b)).unwrap();
        let numeric =
            common::golden_section_max(1e-3, 50.0, |c| log_likelihood(&data, &op, c, b));
        assert!(
            (fit.c_hat - numeric).abs() <= 1e-6 * numeric,
            "{}: closed form {} vs numeric {}",
            op.label(),
            fit.c_hat,
            numeric
        );
        // and the reported likelihood is the one at the maximizer
        let ll = log_likelihood(&data, &op, fit.c_hat, b);
        assert!((fit.log_likelihood - ll).abs() <= 1e-9 * ll.abs().max(1.0));
    }
}

#[test]
fn univariate_recovery_across_seeds() {
    let cases = [
        (BuiltinOpId::Addition, 2.0, 0.0),
        (BuiltinOpId::Multiplication, 1.5, 2.0),
        (BuiltinOpId::ShiftedMultiplication, 0.8, 1.0),
        (BuiltinOpId::NegQuadratic, 2.5, 0.0),
    ];
    for (id, c, b) in cases {
        let op = AssocOp::builtin(id);
        let d = GrlmpDistribution::new(op.clone(), c, b).unwrap();
        let mut rel_errors = Vec::new();
        for seed in 0..5u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(2_000 + seed);
            let data = d.sample(&mut rng, 10_000).unwrap();
            let fit = fit_univariate(&data, &op, UpperBound::Known(b)).unwrap();
            rel_errors.push((fit.c_hat - c).abs() / c);
        }
        for (seed, err) in rel_errors.iter().enumerate() {
            assert!(*err < 0.05, "{}: seed {seed} off by {err}", op.label());
        }
        let mean_err: f64 = rel_errors.iter().sum::<f64>() / rel_errors.len() as f64;
        assert!(mean_err < 0.03, "{}: mean error {mean_err}", op.label());
    }
}

#[test]
fn estimated_endpoint_recovery() {
    let op = AssocOp::builtin(BuiltinOpId::Addition);
    let d = GrlmpDistribution::new(op.clone(), 2.0, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3_000);
    let data = d.sample(&mut rng, 10_000).unwrap();
    let fit = fit_univariate(&data, &op, UpperBound::Estimate).unwrap();
    // the sample maximum sits below b by an Exp(c)/n-sized gap
    assert!(fit.b_hat <= 0.5);
    assert!(0.5 - fit.b_hat < 0.01, "b_hat = {}", fit.b_hat);
    assert!((fit.c_hat - 2.0).abs() / 2.0 < 0.05);
}

#[test]
fn bivariate_recovery_from_sampler_output() {
    let op = AssocOp::builtin(BuiltinOpId::Addition);
    let (l1, l2, l12) = (1.0, 1.0, 1.0);
    let d = BivariateGrlmp::new(op.clone(), l1, l2, l12, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4_000);
    let pairs = d.sample_pairs(&mut rng, 50_000).unwrap();
    let fit = fit_bivariate(&pairs, &op, 0.0, 0.0).unwrap();
    assert!((fit.lambda1_hat - l1).abs() / l1 < 0.05, "{fit:?}");
    assert!((fit.lambda2_hat - l2).abs() / l2 < 0.05, "{fit:?}");
    assert!((fit.lambda12_hat - l12).abs() / l12 < 0.05, "{fit:?}");
    assert!(!fit.clamped);
    // the sum invariant holds by construction
    assert!(
        (fit.lambda1_hat + fit.lambda2_hat + fit.lambda12_hat - fit.k_hat).abs() < 1e-9
    );
    // and the two routes to the total rate agree to sampling accuracy
    assert!(fit.consistency_defect / fit.k_hat < 0.05);
}

#[test]
fn independent_pairs_yield_zero_shock_rate() {
    let op = AssocOp::builtin(BuiltinOpId::Multiplication);
    let d = BivariateGrlmp::new(op.clone(), 1.0, 2.0, 0.0, 2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let pairs = d.sample_pairs(&mut rng, 20_000).unwrap();
    let fit = fit_bivariate(&pairs, &op, 2.0, 0.0).unwrap();
    assert_eq!(fit.tie_count, 0);
    assert_eq!(fit.lambda12_hat, 0.0);
    assert!((fit.lambda1_hat - 1.0).abs() < 0.05);
    assert!((fit.lambda2_hat - 2.0).abs() < 0.1);
}
