//! Univariate distributions with the generalized reversed lack-of-memory
//! property.
//!
//! For a binary associative operation `*` with identity `e`, a random
//! variable X has the property when its distribution function satisfies
//!
//! ```text
//! F(x) · F(t) = F(x * t) · F(e)
//! ```
//!
//! on the admissible part of the support. The continuous solutions form a
//! single family indexed by a rate `c > 0` and an upper endpoint `b`:
//!
//! ```text
//! F(x) = exp[c · (g(x) - g(b))]   for x below b,  F(x) = 1 for x ≥ b,
//! ```
//!
//! where `g` is the generator of the operation. Specializing the operation
//! recovers the classical members: `exp[c(x-b)]` under addition, the power
//! function `(x/b)^c` under multiplication, `((x+1)/(b+1))^c` under
//! `x+y+xy`, and the reflected Weibull `exp(-c x²)` under the
//! negative-quadratic generator.
//!
//! The family is closed under exponentiation `F ↦ F^α` (the proportional
//! reversed-hazards action, `c ↦ α·c`), has reversed hazard rate
//! `c · g'(x)`, and admits exact inverse-transform sampling. The same
//! formula restricted to `[e, b)` with an atom `exp(-c·g(b))` at the
//! identity gives the truncated variant [`TruncatedGrlmp`].

use rand::distr::Open01;
use rand::Rng;
use serde::Serialize;

use crate::assoc_op::{AssocOp, SupportInterval};
use crate::error::{Error, Result};

/// The continuous family `F(x) = exp[c(g(x) - g(b))]` on `(inf A, b)`.
#[derive(Debug, Clone)]
pub struct GrlmpDistribution {
    op: AssocOp,
    c: f64,
    b: f64,
    g_b: f64,
}

/// Maximum absolute residual of the characterizing functional equation
/// over a grid, with the point attaining it.
#[derive(Debug, Clone, Serialize)]
pub struct GrlmpResidual {
    pub max_abs: f64,
    pub argmax: (f64, f64),
}

impl GrlmpDistribution {
    /// Requires `c > 0` and an upper endpoint `b` inside the operation's
    /// domain with `g(b)` finite.
    pub fn new(op: AssocOp, c: f64, b: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "rate must be positive and finite, got c = {c}"
            )));
        }
        let g_b = op
            .g_at(b)
            .map_err(|_| {
                Error::InvalidParameter(format!(
                    "upper endpoint {} must lie in the domain of '{}' with finite g",
                    b,
                    op.label()
                ))
            })?;
        if b <= op.domain().lower() {
            return Err(Error::InvalidParameter(format!(
                "upper endpoint {} leaves an empty support above {}",
                b,
                op.domain().lower()
            )));
        }
        Ok(Self { op, c, b, g_b })
    }

    pub fn op(&self) -> &AssocOp {
        &self.op
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The open support `(inf A, b)`.
    pub fn support(&self) -> SupportInterval {
        SupportInterval::new(self.op.domain().lower(), self.b).expect("validated on construction")
    }

    /// Distribution function; total on the reals.
    pub fn cdf(&self, x: f64) -> f64 {
        if x >= self.b {
            return 1.0;
        }
        if x <= self.op.domain().lower() {
            return 0.0;
        }
        let gx = (match self.op.g_at(x) {
            Ok(v) => v,
            Err(_) => return 0.0,
        }) - self.g_b;
        (self.c * gx).exp()
    }

    /// Density `c · g'(x) · exp[c(g(x) - g(b))]` on the open support, zero
    /// elsewhere. Errs only if the derivative fallback fails at `x`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !self.support().contains(x) {
            return Ok(0.0);
        }
        let gp = self.op.g_prime(x)?;
        let gx = self.op.g_at(x)?;
        Ok(self.c * gp * (self.c * (gx - self.g_b)).exp())
    }

    /// Inverse distribution function `g⁻¹(g(b) + ln(p)/c)` for `0 < p ≤ 1`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Domain(format!("p out of range: {p}")));
        }
        if p == 1.0 {
            return Ok(self.b);
        }
        Ok(self.op.g_inv_at(self.g_b + p.ln() / self.c))
    }

    /// One inverse-transform draw. The uniform variate comes from the
    /// open interval (0, 1), so the draw lies strictly inside the support.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        self.op.g_inv_at(self.g_b + u.ln() / self.c)
    }

    /// `n` i.i.d. inverse-transform draws.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be ≥ 1".into()));
        }
        Ok((0..n).map(|_| self.sample_one(rng)).collect())
    }

    /// Quantile evaluation for a uniform already drawn; shared with the
    /// truncated sampler.
    pub(crate) fn sample_from_uniform(&self, u: f64) -> f64 {
        self.op.g_inv_at(self.g_b + u.ln() / self.c)
    }

    /// Reversed hazard rate `f(x)/F(x) = c · g'(x)` on the open support.
    pub fn reversed_hazard(&self, x: f64) -> Result<f64> {
        if !self.support().contains(x) {
            return Err(Error::Domain(format!(
                "{x} is outside the open support of the distribution"
            )));
        }
        Ok(self.c * self.op.g_prime(x)?)
    }

    /// The proportional reversed-hazards action: `F ↦ F^α`, i.e. `c ↦ α·c`.
    pub fn exponentiate(&self, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Domain(format!(
                "exponent must be positive and finite, got {alpha}"
            )));
        }
        Ok(Self {
            op: self.op.clone(),
            c: self.c * alpha,
            b: self.b,
            g_b: self.g_b,
        })
    }

    /// Smallest quantile probed by the standard grids: 0.02, pushed up
    /// when that quantile would sit closer than `1e-5·max(1, |boundary|)`
    /// to a finite lower domain boundary, where floating point cannot
    /// resolve the boundary gap to full relative precision.
    pub(crate) fn lower_probe_quantile(&self) -> Result<f64> {
        let lower = self.op.domain().lower();
        if !lower.is_finite() {
            return Ok(0.02);
        }
        let floor = lower + 1e-5 * lower.abs().max(1.0);
        if floor >= self.b {
            return Err(Error::Domain(format!(
                "endpoint {} sits too close to the boundary {lower} for a \
                 floating-point probe grid",
                self.b
            )));
        }
        Ok(self.cdf(floor).min(0.5).max(0.02))
    }

    /// Validate one `(x, t)` pair against the constraint set of the
    /// functional equation: `inf A < x < b`, `e ≤ t ≤ b`, `x * t ≤ b`.
    fn validate_residual_pair(&self, x: f64, t: f64) -> Result<f64> {
        let e = self.op.identity();
        if !self.support().contains(x) {
            return Err(Error::Domain(format!(
                "x = {x} violates inf A < x < b for b = {}",
                self.b
            )));
        }
        if !(t >= e && t <= self.b) {
            return Err(Error::Domain(format!(
                "t = {t} violates e ≤ t ≤ b with e = {e}, b = {}",
                self.b
            )));
        }
        let z = self.op.combine(x, t)?;
        if z > self.b {
            return Err(Error::Domain(format!(
                "x * t = {z} exceeds the upper endpoint {}",
                self.b
            )));
        }
        Ok(z)
    }

    /// Residual of `F(x)·F(t) = F(x*t)·F(e)` over a grid of `(x, t)` pairs,
    /// with the combined slot evaluated through this distribution's own
    /// distribution function.
    ///
    /// Constraint violations are reported as errors rather than skipped.
    pub fn grlmp_residual(&self, grid: &[(f64, f64)]) -> Result<GrlmpResidual> {
        self.grlmp_residual_with(|v| self.cdf(v), grid)
    }

    /// As [`grlmp_residual`](Self::grlmp_residual), but with the combined
    /// slot `F(x*t)` evaluated through a caller-supplied distribution
    /// function. Passing a different function than `self.cdf` turns the
    /// residual into a discrepancy detector between the two.
    pub fn grlmp_residual_with(
        &self,
        combined_slot_cdf: impl Fn(f64) -> f64,
        grid: &[(f64, f64)],
    ) -> Result<GrlmpResidual> {
        if grid.is_empty() {
            return Err(Error::Domain("empty residual grid".into()));
        }
        let f_e = self.cdf(self.op.identity());
        let mut max_abs = 0.0_f64;
        let mut argmax = grid[0];
        for &(x, t) in grid {
            let z = self.validate_residual_pair(x, t)?;
            let r = (self.cdf(x) * self.cdf(t) - combined_slot_cdf(z) * f_e).abs();
            if r > max_abs {
                max_abs = r;
                argmax = (x, t);
            }
        }
        Ok(GrlmpResidual { max_abs, argmax })
    }

    /// A grid of `(x, t)` pairs satisfying the functional-equation
    /// constraints: `x` from quantiles spread over the support, `t` from a
    /// uniform grid in generator space over `[0, u_max]` where `u_max`
    /// keeps every combination at or below `b`.
    ///
    /// Near a finite lower boundary the spacing of floating-point numbers
    /// quantizes the boundary gap, so the generator round-trip there loses
    /// absolute accuracy no algebra can recover; the grid therefore stays
    /// at least `1e-5·max(1, |boundary|)` away from such a boundary by
    /// raising its lowest probe quantile when necessary.
    ///
    /// When `b` equals the identity the admissible `t`-range collapses to
    /// the single point `t = e` and the grid is degenerate in `t` by
    /// construction.
    pub fn standard_residual_grid(&self, nx: usize, nt: usize) -> Result<Vec<(f64, f64)>> {
        if nx == 0 || nt == 0 {
            return Err(Error::Domain("grid sizes must be positive".into()));
        }
        let e = self.op.identity();
        if self.b < e {
            return Err(Error::Domain(format!(
                "no admissible t: upper endpoint {} lies below the identity {e}",
                self.b
            )));
        }
        let p_lo = self.lower_probe_quantile()?;
        let p_hi = 0.98;
        let mut xs = Vec::with_capacity(nx);
        for i in 0..nx {
            let p = p_lo + (p_hi - p_lo) * i as f64 / (nx.max(2) - 1) as f64;
            xs.push(self.quantile(p)?);
        }
        // g(t) ranges over [0, u_max]: t ≤ b caps it at g(b) - g(e) = g(b),
        // and x*t ≤ b caps it at -ln(p_hi)/c; a margin absorbs rounding.
        let u_cap_from_b = self.g_b - self.op.g_at(e)?;
        let u_max = (-(0.98_f64.ln()) / self.c).min(u_cap_from_b).max(0.0) * (1.0 - 1e-9);
        let mut grid = Vec::with_capacity(nx * nt);
        for &x in &xs {
            for j in 0..nt {
                let u = if nt == 1 {
                    0.0
                } else {
                    u_max * j as f64 / (nt - 1) as f64
                };
                let t = if u == 0.0 { e } else { self.op.g_inv_at(u) };
                grid.push((x, t));
            }
        }
        Ok(grid)
    }
}

/// The truncated variant: same exponential form on `[e, b)` plus an atom
/// of mass `exp(-c·g(b))` at the identity.
#[derive(Debug, Clone)]
pub struct TruncatedGrlmp {
    base: GrlmpDistribution,
}

impl TruncatedGrlmp {
    /// Requires the identity to lie strictly inside the base support, so
    /// the atom mass `exp(-c·g(b))` falls in (0, 1).
    pub fn new(base: GrlmpDistribution) -> Result<Self> {
        let e = base.op.identity();
        if e <= base.op.domain().lower() {
            return Err(Error::InvalidParameter(format!(
                "identity {e} must lie strictly above the domain lower endpoint"
            )));
        }
        if base.b <= e {
            return Err(Error::InvalidParameter(format!(
                "truncated family needs b > e, got b = {}, e = {e}",
                base.b
            )));
        }
        Ok(Self { base })
    }

    pub fn base(&self) -> &GrlmpDistribution {
        &self.base
    }

    /// Probability mass at the identity: `exp(-c·g(b))`.
    pub fn atom_mass(&self) -> f64 {
        (-self.base.c * self.base.g_b).exp()
    }

    /// Distribution function: zero strictly left of the identity, the base
    /// exponential form on `[e, b)` (whose value at `e` is the atom mass),
    /// one from `b` on.
    pub fn cdf(&self, x: f64) -> f64 {
        let e = self.base.op.identity();
        if x < e {
            return 0.0;
        }
        if x >= self.base.b {
            return 1.0;
        }
        self.base.cdf(x.max(e))
    }

    /// One draw, with the atom handled by thresholding the uniform:
    /// `u ≤ atom mass` maps to the identity, larger `u` to the continuous
    /// branch.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        if u <= self.atom_mass() {
            self.base.op().identity()
        } else {
            self.base.sample_from_uniform(u)
        }
    }

    /// `n` draws by inverse transform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be ≥ 1".into()));
        }
        Ok((0..n).map(|_| self.sample_one(rng)).collect())
    }
}
