//! Parameter estimation and statistical verification utilities.
//!
//! The univariate rate has a closed-form maximum-likelihood estimator:
//! with the generator gap `T_i = g(b) - g(x_i)` (exponentially distributed
//! with rate `c` under the model), the score vanishes at
//!
//! ```text
//! c_hat = n / Σ_i (g(b) - g(x_i)).
//! ```
//!
//! When `b` is unknown it is estimated by the sample maximum — the
//! likelihood is monotone decreasing in `g(b)` — and the maximal
//! observation then contributes a zero term to the sum. The boundary
//! estimate is biased low by O(1/n); the bias is documented, not
//! corrected.
//!
//! Bivariate rates are recovered moment-style from three reductions that
//! each have univariate form: the per-pair maxima (rate `k`), the two
//! marginals (rates `λ_i + λ12`), and the tie fraction (`λ12 / k`). A full
//! joint likelihood is out of scope: the singular diagonal component makes
//! the likelihood non-dominated by Lebesgue measure.

use serde::Serialize;

use crate::assoc_op::AssocOp;
use crate::error::{Error, Result};

/// Upper-endpoint handling for [`fit_univariate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpperBound {
    Known(f64),
    Estimate,
}

/// Closed-form univariate fit.
#[derive(Debug, Clone, Serialize)]
pub struct UnivariateFit {
    pub c_hat: f64,
    pub b_hat: f64,
    pub log_likelihood: f64,
    pub n: usize,
}

/// Moment-style bivariate fit.
///
/// `k_hat` is the sum `λ1_hat + λ2_hat + λ12_hat`; the independent
/// estimate of the total rate from the per-pair maxima is kept in
/// `k_max_hat`, and `consistency_defect` records how far the two routes
/// disagree.
#[derive(Debug, Clone, Serialize)]
pub struct BivariateFit {
    pub lambda1_hat: f64,
    pub lambda2_hat: f64,
    pub lambda12_hat: f64,
    pub k_hat: f64,
    pub k_max_hat: f64,
    pub consistency_defect: f64,
    pub tie_count: usize,
    pub n: usize,
    /// Set when sampling noise drove a marginal rate below `λ12_hat` and
    /// the estimate was clamped at zero.
    pub clamped: bool,
}

/// One-sample Kolmogorov-Smirnov test report at the asymptotic 1% level.
#[derive(Debug, Clone, Serialize)]
pub struct KsReport {
    pub statistic: f64,
    pub n: usize,
    pub critical_value_01: f64,
    pub pass: bool,
}

/// Closed-form maximum-likelihood fit of the univariate family.
///
/// Requires at least two observations, all inside the operation's domain
/// and strictly below a known `b`.
pub fn fit_univariate(data: &[f64], op: &AssocOp, bound: UpperBound) -> Result<UnivariateFit> {
    if data.len() < 2 {
        return Err(Error::Degenerate(format!(
            "need at least 2 observations, got {}",
            data.len()
        )));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("observations must be finite".into()));
    }
    let max = data.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let b_hat = match bound {
        UpperBound::Known(b) => {
            if data.iter().any(|&x| x >= b) {
                return Err(Error::Domain(format!(
                    "all observations must lie strictly below b = {b}"
                )));
            }
            b
        }
        UpperBound::Estimate => max,
    };
    let g_b = op.g_at(b_hat).map_err(|_| {
        Error::Domain(format!(
            "upper endpoint {b_hat} is outside the domain of '{}'",
            op.label()
        ))
    })?;
    let mut sum_gap = 0.0;
    let mut sum_ll_terms = 0.0;
    for &x in data {
        let gx = op.g_at(x)?;
        sum_gap += g_b - gx;
        sum_ll_terms += op.g_prime(x)?.ln();
    }
    if sum_gap <= 0.0 {
        return Err(Error::Degenerate(
            "all observations coincide with the endpoint; the rate is unidentified".into(),
        ));
    }
    let n = data.len() as f64;
    let c_hat = n / sum_gap;
    // log L(c_hat) = n ln c + Σ ln g'(x_i) - c Σ (g(b) - g(x_i)), and the
    // last term equals n at the maximizer.
    let log_likelihood = n * c_hat.ln() + sum_ll_terms - n;
    Ok(UnivariateFit {
        c_hat,
        b_hat,
        log_likelihood,
        n: data.len(),
    })
}

/// Tie test used by [`fit_bivariate`]: exact with zero tolerance (the
/// sampler assigns shared shocks bit-identically), relative otherwise.
fn is_tie(x1: f64, x2: f64, tol: f64) -> bool {
    if tol == 0.0 {
        x1 == x2
    } else {
        (x1 - x2).abs() <= tol * x1.abs().max(x2.abs()).max(1.0)
    }
}

/// Moment-style fit of the bivariate family with known upper endpoint.
pub fn fit_bivariate(
    pairs: &[(f64, f64)],
    op: &AssocOp,
    b: f64,
    tie_tolerance: f64,
) -> Result<BivariateFit> {
    if pairs.len() < 10 {
        return Err(Error::Degenerate(format!(
            "need at least 10 pairs, got {}",
            pairs.len()
        )));
    }
    if tie_tolerance.is_nan() || tie_tolerance < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tie tolerance must be nonnegative, got {tie_tolerance}"
        )));
    }
    let maxima: Vec<f64> = pairs.iter().map(|&(a, c)| a.max(c)).collect();
    let firsts: Vec<f64> = pairs.iter().map(|&(a, _)| a).collect();
    let seconds: Vec<f64> = pairs.iter().map(|&(_, c)| c).collect();

    let k_max_hat = fit_univariate(&maxima, op, UpperBound::Known(b))?.c_hat;
    let m1_hat = fit_univariate(&firsts, op, UpperBound::Known(b))?.c_hat;
    let m2_hat = fit_univariate(&seconds, op, UpperBound::Known(b))?.c_hat;

    let tie_count = pairs
        .iter()
        .filter(|&&(a, c)| is_tie(a, c, tie_tolerance))
        .count();
    let tie_fraction = tie_count as f64 / pairs.len() as f64;
    let lambda12_hat = k_max_hat * tie_fraction;

    let mut clamped = false;
    let mut lambda_i = |m: f64| {
        let v = m - lambda12_hat;
        if v < 0.0 {
            clamped = true;
            0.0
        } else {
            v
        }
    };
    let lambda1_hat = lambda_i(m1_hat);
    let lambda2_hat = lambda_i(m2_hat);
    let k_hat = lambda1_hat + lambda2_hat + lambda12_hat;
    let consistency_defect = (m1_hat + m2_hat - lambda12_hat - k_max_hat).abs();

    Ok(BivariateFit {
        lambda1_hat,
        lambda2_hat,
        lambda12_hat,
        k_hat,
        k_max_hat,
        consistency_defect,
        tie_count,
        n: pairs.len(),
        clamped,
    })
}

/// One-sample Kolmogorov-Smirnov statistic against a distribution
/// function, with the asymptotic 1% critical value `1.6276 / sqrt(n)`.
pub fn ks_test(data: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsReport> {
    if data.is_empty() {
        return Err(Error::Degenerate("empty sample".into()));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("observations must be finite".into()));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut statistic = 0.0_f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let hi = (i as f64 + 1.0) / n - f;
        let lo = f - i as f64 / n;
        statistic = statistic.max(hi.max(lo));
    }
    let critical_value_01 = 1.6276 / n.sqrt();
    Ok(KsReport {
        statistic,
        n: data.len(),
        critical_value_01,
        pass: statistic < critical_value_01,
    })
}

/// Central four-point mixed difference
/// `[F(x1+h, x2+h) - F(x1+h, x2-h) - F(x1-h, x2+h) + F(x1-h, x2-h)] / 4h²`.
///
/// The probe must keep the whole stencil strictly inside
/// `(lower, upper)²` and away from the diagonal (`|x1 - x2| > 4h`), where
/// the mixed partial of the joint distribution function is the density of
/// its absolutely continuous part.
pub fn numeric_mixed_partial(
    f: impl Fn(f64, f64) -> f64,
    x1: f64,
    x2: f64,
    h: f64,
    lower: f64,
    upper: f64,
) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "step must be positive and finite, got {h}"
        )));
    }
    if (x1 - x2).abs() <= 4.0 * h {
        return Err(Error::Domain(format!(
            "stencil at ({x1}, {x2}) with h = {h} straddles the diagonal"
        )));
    }
    for v in [x1 - h, x1 + h, x2 - h, x2 + h] {
        if !(v > lower && v < upper) {
            return Err(Error::Domain(format!(
                "stencil point {v} leaves the open support ({lower}, {upper})"
            )));
        }
    }
    Ok((f(x1 + h, x2 + h) - f(x1 + h, x2 - h) - f(x1 - h, x2 + h) + f(x1 - h, x2 - h))
        / (4.0 * h * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_op::{AssocOp, BuiltinOpId};
    use crate::univariate::GrlmpDistribution;

    #[test]
    fn two_point_closed_form() {
        let op = AssocOp::builtin(BuiltinOpId::Addition);
        let fit = fit_univariate(&[-1.0, -2.0], &op, UpperBound::Known(0.0)).unwrap();
        assert!((fit.c_hat - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(fit.b_hat, 0.0);
        assert_eq!(fit.n, 2);
    }

    #[test]
    fn estimated_endpoint_is_sample_max() {
        let op = AssocOp::builtin(BuiltinOpId::Addition);
        let data = [-1.0, -2.0, -0.5, -3.0];
        let fit = fit_univariate(&data, &op, UpperBound::Estimate).unwrap();
        assert_eq!(fit.b_hat, -0.5);
        // the maximal observation contributes a zero gap; the formula
        // keeps all n terms
        let expect = 4.0 / ((-0.5 + 1.0) + (-0.5 + 2.0) + 0.0 + (-0.5 + 3.0));
        assert!((fit.c_hat - expect).abs() < 1e-15);
    }

    #[test]
    fn fit_rejects_degenerate_and_out_of_range_data() {
        let op = AssocOp::builtin(BuiltinOpId::Addition);
        assert!(matches!(
            fit_univariate(&[], &op, UpperBound::Known(0.0)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            fit_univariate(&[-1.0], &op, UpperBound::Known(0.0)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            fit_univariate(&[-1.0, 0.5], &op, UpperBound::Known(0.0)),
            Err(Error::Domain(_))
        ));
        // identical observations with estimated endpoint: zero total gap
        assert!(matches!(
            fit_univariate(&[-1.0, -1.0, -1.0], &op, UpperBound::Estimate),
            Err(Error::Degenerate(_))
        ));
        let mul = AssocOp::builtin(BuiltinOpId::Multiplication);
        assert!(matches!(
            fit_univariate(&[-1.0, 0.5], &mul, UpperBound::Known(2.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn generator_scale_invariance_of_fit() {
        let alpha = 3.0;
        let scaled = AssocOp::custom(
            "scaled_addition",
            move |x| alpha * x,
            move |s| s / alpha,
            Some(Box::new(move |_| alpha)),
            0.0,
            crate::assoc_op::SupportInterval::new(f64::NEG_INFINITY, f64::INFINITY).unwrap(),
        )
        .unwrap();
        let plain = AssocOp::builtin(BuiltinOpId::Addition);
        let data = [-0.4, -1.3, -2.2, -0.9];
        let f1 = fit_univariate(&data, &plain, UpperBound::Known(0.0)).unwrap();
        let f2 = fit_univariate(&data, &scaled, UpperBound::Known(0.0)).unwrap();
        assert!((f2.c_hat - f1.c_hat / alpha).abs() < 1e-15);
    }

    #[test]
    fn bivariate_fit_swaps_with_coordinates() {
        let op = AssocOp::builtin(BuiltinOpId::Addition);
        let pairs: Vec<(f64, f64)> = (1..=40)
            .map(|i| (-(i as f64) * 0.05, -(i as f64) * 0.03 - 0.01))
            .collect();
        let fit = fit_bivariate(&pairs, &op, 0.0, 0.0).unwrap();
        let swapped: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        let fit_sw = fit_bivariate(&swapped, &op, 0.0, 0.0).unwrap();
        assert_eq!(fit.lambda1_hat, fit_sw.lambda2_hat);
        assert_eq!(fit.lambda2_hat, fit_sw.lambda1_hat);
        assert_eq!(fit.k_max_hat, fit_sw.k_max_hat);
        assert_eq!(fit.tie_count, 0);
        assert_eq!(fit.lambda12_hat, 0.0);
    }

    #[test]
    fn bivariate_fit_counts_relative_ties() {
        let op = AssocOp::builtin(BuiltinOpId::Addition);
        let mut pairs: Vec<(f64, f64)> = (1..=20)
            .map(|i| (-(i as f64) * 0.1, -(i as f64) * 0.1))
            .collect();
        pairs.extend((1..=20).map(|i| (-(i as f64) * 0.11, -(i as f64) * 0.07 - 1.0)));
        let exact = fit_bivariate(&pairs, &op, 0.0, 0.0).unwrap();
        assert_eq!(exact.tie_count, 20);
        // nudge ties by 1e-12: exact equality misses them, the relative
        // tolerance recovers them
        let nudged: Vec<(f64, f64)> =
            pairs.iter().map(|&(a, b)| (a, if a == b { b + 1e-12 } else { b })).collect();
        let missed = fit_bivariate(&nudged, &op, 0.0, 0.0).unwrap();
        assert_eq!(missed.tie_count, 0);
        let found = fit_bivariate(&nudged, &op, 0.0, 1e-9).unwrap();
        assert_eq!(found.tie_count, 20);
    }

    #[test]
    fn bivariate_fit_requires_enough_pairs() {
        let op = AssocOp::builtin(BuiltinOpId::Addition);
        let pairs = vec![(-1.0, -2.0); 9];
        assert!(matches!(
            fit_bivariate(&pairs, &op, 0.0, 0.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn ks_singleton_statistic_is_half() {
        let op = AssocOp::builtin(BuiltinOpId::Multiplication);
        let d = GrlmpDistribution::new(op, 1.0, 2.0).unwrap();
        let x = d.quantile(0.5).unwrap();
        let report = ks_test(&[x], |v| d.cdf(v)).unwrap();
        assert!((report.statistic - 0.5).abs() < 1e-12);
        assert_eq!(report.n, 1);
        assert!((report.critical_value_01 - 1.6276).abs() < 1e-12);
    }

    #[test]
    fn ks_is_invariant_under_probability_integral_transform() {
        let op = AssocOp::builtin(BuiltinOpId::Multiplication);
        let d = GrlmpDistribution::new(op, 2.0, 2.0).unwrap();
        let data: Vec<f64> = (1..=50).map(|i| d.quantile(i as f64 / 51.0).unwrap()).collect();
        let direct = ks_test(&data, |v| d.cdf(v)).unwrap();
        let transformed: Vec<f64> = data.iter().map(|&x| d.cdf(x)).collect();
        let uniform = ks_test(&transformed, |u| u.clamp(0.0, 1.0)).unwrap();
        assert!((direct.statistic - uniform.statistic).abs() < 1e-12);
    }

    #[test]
    fn ks_rejects_empty_and_nonfinite() {
        assert!(ks_test(&[], |_| 0.5).is_err());
        assert!(ks_test(&[f64::NAN], |_| 0.5).is_err());
    }

    #[test]
    fn mixed_partial_of_product_form() {
        // F = exp[(x1 - b) + (x2 - b)] has mixed partial equal to itself
        let f = |x1: f64, x2: f64| (x1 + x2).exp();
        let v = numeric_mixed_partial(f, -2.0, -1.0, 1e-4, f64::NEG_INFINITY, 0.0).unwrap();
        assert!((v - (-3.0_f64).exp()).abs() < 1e-5, "got {v}");
    }

    #[test]
    fn mixed_partial_guards() {
        let f = |x1: f64, x2: f64| (x1 + x2).exp();
        assert!(numeric_mixed_partial(f, -1.0, -1.0001, 1e-4, f64::NEG_INFINITY, 0.0).is_err());
        assert!(numeric_mixed_partial(f, -2.0, -0.00005, 1e-4, f64::NEG_INFINITY, 0.0).is_err());
        assert!(numeric_mixed_partial(f, -2.0, -1.0, 0.0, f64::NEG_INFINITY, 0.0).is_err());
    }
}
