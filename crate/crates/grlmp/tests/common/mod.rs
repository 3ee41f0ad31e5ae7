//! Shared helpers for the integration suites. Oracles here are kept
//! independent of the library paths they are used to check.

#![allow(dead_code)]

use grlmp::quadrature::GaussLegendre;
use grlmp::GrlmpDistribution;

/// Golden-section maximizer of a unimodal function on [lo, hi].
pub fn golden_section_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
        if (hi - lo).abs() < 1e-12 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Quadrature of the density over the support, for the normalization
/// oracle.
///
/// Composite Gauss-Legendre over panels that shrink geometrically toward
/// the lower endpoint, so integrable power-law singularities (small rates
/// under the multiplicative generator) converge. An infinite lower tail is
/// truncated at the 1e-8 quantile, which removes exactly 1e-8 of mass.
pub fn integrate_pdf(d: &GrlmpDistribution) -> f64 {
    let rule = GaussLegendre::new(32);
    let lower = d.support().lower();
    let b = d.b();
    let (lo, truncated_mass) = if lower.is_finite() {
        (lower, 0.0)
    } else {
        (d.quantile(1e-8).unwrap(), 1e-8)
    };
    let span = b - lo;
    let mut total = truncated_mass;
    // panels [lo + span/2^{j+1}, lo + span/2^j], j = 0..J
    let panels = 120;
    let mut hi_frac = 1.0_f64;
    for _ in 0..panels {
        let lo_frac = hi_frac / 2.0;
        let a = lo + span * lo_frac;
        let c = lo + span * hi_frac;
        total += rule.integrate(a, c, |x| d.pdf(x).unwrap());
        hi_frac = lo_frac;
    }
    total
}

/// Empirical CDF of a sample at a point.
pub fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    let idx = sorted.partition_point(|&v| v <= x);
    idx as f64 / sorted.len() as f64
}

/// Empirical joint CDF of a pair sample at a point.
pub fn empirical_joint_cdf(pairs: &[(f64, f64)], x1: f64, x2: f64) -> f64 {
    let count = pairs.iter().filter(|&&(a, b)| a <= x1 && b <= x2).count();
    count as f64 / pairs.len() as f64
}
