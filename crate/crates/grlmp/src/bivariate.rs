//! The bivariate family with the generalized reversed lack-of-memory
//! property, a Marshall-Olkin-type structure on the lower tail.
//!
//! With `s_i = g(x_i) - g(b)`, the joint distribution function is
//!
//! ```text
//! F(x1, x2) = exp[ λ1·s1 + λ2·s2 + λ12·min(s1, s2) ]
//! ```
//!
//! on the square below the common upper endpoint `b`. The common-shock
//! rate `λ12` attaches to the smaller of the two generator gaps — the
//! coordinate further from `b` — which is exactly what the construction
//!
//! ```text
//! X1 = max(U, W),   X2 = max(V, W)
//! ```
//!
//! produces for independent components U, V, W with rates λ1, λ2, λ12:
//! `P(W ≤ x1, W ≤ x2) = F_W(min(x1, x2))`. Attaching the shock term to the
//! larger gap instead would assign negative mass to rectangles straddling
//! the diagonal as soon as `λ12 > 0`, so no distribution does that.
//!
//! Consequences used throughout:
//! - marginals are univariate members with rates `λ_i + λ12`;
//! - `max(X1, X2)` is a univariate member with rate `k = λ1 + λ2 + λ12`;
//! - `P(X1 = X2) = λ12 / k`, realized by the sampler with bit-identical
//!   coordinates;
//! - `λ12 = 0` if and only if the coordinates are independent;
//! - restricted to `[e, b)²` the measure splits into two corner/edge
//!   atoms, a singular diagonal component and an absolutely continuous
//!   part ([`BivariateGrlmp::decompose`]).

use rand::Rng;
use serde::Serialize;

use crate::assoc_op::AssocOp;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::univariate::{GrlmpDistribution, TruncatedGrlmp};

/// Coordinate selector for marginal operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Margin {
    X1,
    X2,
}

/// Joint distribution `exp[λ1 s1 + λ2 s2 + λ12 min(s1, s2)]` with a common
/// upper endpoint `b` for both coordinates.
#[derive(Debug, Clone)]
pub struct BivariateGrlmp {
    op: AssocOp,
    lambda1: f64,
    lambda2: f64,
    lambda12: f64,
    b: f64,
    g_b: f64,
}

/// Residual report for the single-shift functional equation
/// `F(x1*t, x2*t)·F(e,e) = F(x1,x2)·F(t,t)`.
#[derive(Debug, Clone, Serialize)]
pub struct BivariateResidual {
    pub max_abs: f64,
    pub argmax: (f64, f64, f64),
}

/// Residual report for the two-shift equation
/// `F(x1*t1, x2*t2)·F(e,e) = F(x1,x2)·F(t1,t2)`, which only the
/// independent (`λ12 = 0`) members satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct DirectExtensionResidual {
    pub max_abs: f64,
    pub argmax: (f64, f64, f64, f64),
}

/// One atom of the discrete component of the truncated measure.
#[derive(Debug, Clone, Serialize)]
pub struct AtomMass {
    pub label: String,
    pub location: (f64, f64),
    pub mass: f64,
}

/// Masses of the discrete + singular + absolutely continuous split of the
/// truncated measure on `[e, b)²`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub atoms: Vec<AtomMass>,
    /// Mass carried by the open diagonal `x1 = x2 ∈ (e, b)`.
    pub singular_mass: f64,
    /// Mass of the absolutely continuous part, by quadrature of the
    /// off-diagonal density.
    pub ac_mass: f64,
    pub total: f64,
}

impl DecompositionReport {
    pub fn atom_total(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }
}

/// Quadrature configuration for [`BivariateGrlmp::decompose`].
#[derive(Debug, Clone, Copy)]
pub struct DecomposeConfig {
    /// Gauss-Legendre nodes per axis on each off-diagonal triangle.
    pub nodes: usize,
    /// Accepted deviation of the summed masses from one.
    pub mass_tolerance: f64,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        Self {
            nodes: 64,
            mass_tolerance: 1e-3,
        }
    }
}

impl BivariateGrlmp {
    pub fn new(op: AssocOp, lambda1: f64, lambda2: f64, lambda12: f64, b: f64) -> Result<Self> {
        for (name, v) in [("lambda1", lambda1), ("lambda2", lambda2)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if !lambda12.is_finite() || lambda12 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda12 must be nonnegative and finite, got {lambda12}"
            )));
        }
        let g_b = op.g_at(b).map_err(|_| {
            Error::InvalidParameter(format!(
                "upper endpoint {} must lie in the domain of '{}' with finite g",
                b,
                op.label()
            ))
        })?;
        if b <= op.domain().lower() {
            return Err(Error::InvalidParameter(format!(
                "upper endpoint {b} leaves an empty support"
            )));
        }
        Ok(Self {
            op,
            lambda1,
            lambda2,
            lambda12,
            b,
            g_b,
        })
    }

    pub fn op(&self) -> &AssocOp {
        &self.op
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn lambda12(&self) -> f64 {
        self.lambda12
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Total rate `k = λ1 + λ2 + λ12`.
    pub fn rate_sum(&self) -> f64 {
        self.lambda1 + self.lambda2 + self.lambda12
    }

    /// Generator gap `g(min(x, b)) - g(b)`, the per-coordinate exponent
    /// contribution; `-inf` below the domain.
    fn shifted_gen(&self, x: f64) -> f64 {
        if x >= self.b {
            return 0.0;
        }
        if x <= self.op.domain().lower() {
            return f64::NEG_INFINITY;
        }
        match self.op.g_at(x) {
            Ok(v) => v - self.g_b,
            Err(_) => f64::NEG_INFINITY,
        }
    }

    /// Joint distribution function; total on the plane, with arguments
    /// clamped at `b`.
    pub fn joint_cdf(&self, x1: f64, x2: f64) -> f64 {
        let s1 = self.shifted_gen(x1);
        let s2 = self.shifted_gen(x2);
        if s1 == f64::NEG_INFINITY || s2 == f64::NEG_INFINITY {
            return 0.0;
        }
        (self.lambda1 * s1 + self.lambda2 * s2 + self.lambda12 * s1.min(s2)).exp()
    }

    /// Marginal distribution of one coordinate: a univariate member with
    /// rate `λ_i + λ12`.
    pub fn marginal(&self, which: Margin) -> GrlmpDistribution {
        let rate = match which {
            Margin::X1 => self.lambda1 + self.lambda12,
            Margin::X2 => self.lambda2 + self.lambda12,
        };
        GrlmpDistribution::new(self.op.clone(), rate, self.b).expect("validated on construction")
    }

    /// Distribution of `max(X1, X2)`: a univariate member with rate `k`.
    pub fn max_distribution(&self) -> GrlmpDistribution {
        GrlmpDistribution::new(self.op.clone(), self.rate_sum(), self.b)
            .expect("validated on construction")
    }

    /// `P(X1 = X2) = λ12 / k` under the common-shock construction.
    pub fn tie_probability(&self) -> f64 {
        self.lambda12 / self.rate_sum()
    }

    /// Independence holds exactly when the common-shock rate vanishes.
    pub fn is_independent(&self) -> bool {
        self.lambda12 == 0.0
    }

    /// Draw `n` pairs through the common-shock representation
    /// `(max(U, W), max(V, W))` with rates λ1, λ2, λ12 and draw order
    /// U, V, W within each pair. With `λ12 = 0` the shock is omitted and
    /// the pair is `(U, V)`. Ties carry bit-identical coordinates.
    pub fn sample_pairs<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Result<Vec<(f64, f64)>> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be ≥ 1".into()));
        }
        let u_dist = GrlmpDistribution::new(self.op.clone(), self.lambda1, self.b)?;
        let v_dist = GrlmpDistribution::new(self.op.clone(), self.lambda2, self.b)?;
        let w_dist = if self.lambda12 > 0.0 {
            Some(GrlmpDistribution::new(
                self.op.clone(),
                self.lambda12,
                self.b,
            )?)
        } else {
            None
        };
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let u = u_dist.sample_one(rng);
            let v = v_dist.sample_one(rng);
            match &w_dist {
                Some(wd) => {
                    let w = wd.sample_one(rng);
                    out.push((u.max(w), v.max(w)));
                }
                None => out.push((u, v)),
            }
        }
        Ok(out)
    }

    /// Constraint check for the truncated view on `[e, b)²`.
    pub fn supports_truncation(&self) -> Result<()> {
        let e = self.op.identity();
        if e <= self.op.domain().lower() {
            return Err(Error::InvalidParameter(format!(
                "identity {e} must lie strictly above the domain lower endpoint"
            )));
        }
        if self.b <= e {
            return Err(Error::InvalidParameter(format!(
                "truncated support needs b > e, got b = {}, e = {e}",
                self.b
            )));
        }
        Ok(())
    }

    /// Distribution function of the truncated measure on `[e, b)²`: zero
    /// as soon as one coordinate drops below the identity, otherwise the
    /// joint form (so `F(e, e) = exp(-k·g(b))` is the corner atom).
    pub fn truncated_joint_cdf(&self, x1: f64, x2: f64) -> f64 {
        let e = self.op.identity();
        if x1 < e || x2 < e {
            return 0.0;
        }
        self.joint_cdf(x1, x2)
    }

    /// Draw pairs from the truncated measure: the common-shock
    /// representation with truncated components, each carrying its atom at
    /// the identity.
    pub fn sample_pairs_truncated<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        n: usize,
    ) -> Result<Vec<(f64, f64)>> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be ≥ 1".into()));
        }
        self.supports_truncation()?;
        let u_dist = TruncatedGrlmp::new(GrlmpDistribution::new(
            self.op.clone(),
            self.lambda1,
            self.b,
        )?)?;
        let v_dist = TruncatedGrlmp::new(GrlmpDistribution::new(
            self.op.clone(),
            self.lambda2,
            self.b,
        )?)?;
        let w_dist = if self.lambda12 > 0.0 {
            Some(TruncatedGrlmp::new(GrlmpDistribution::new(
                self.op.clone(),
                self.lambda12,
                self.b,
            )?)?)
        } else {
            None
        };
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let u = u_dist.sample(rng, 1)?[0];
            let v = v_dist.sample(rng, 1)?[0];
            match &w_dist {
                Some(wd) => {
                    let w = wd.sample(rng, 1)?[0];
                    out.push((u.max(w), v.max(w)));
                }
                None => out.push((u, v)),
            }
        }
        Ok(out)
    }

    fn validate_x(&self, x: f64, name: &str) -> Result<()> {
        if !(x > self.op.domain().lower() && x < self.b) {
            return Err(Error::Domain(format!(
                "{name} = {x} violates inf A < {name} < b for b = {}",
                self.b
            )));
        }
        Ok(())
    }

    fn validate_t(&self, t: f64) -> Result<()> {
        let e = self.op.identity();
        if !(t >= e && t <= self.b) {
            return Err(Error::Domain(format!(
                "t = {t} violates e ≤ t ≤ b with e = {e}, b = {}",
                self.b
            )));
        }
        Ok(())
    }

    fn shifted_combine(&self, x: f64, t: f64) -> Result<f64> {
        let z = self.op.combine(x, t)?;
        if z > self.b {
            return Err(Error::Domain(format!(
                "x * t = {z} exceeds the upper endpoint {}",
                self.b
            )));
        }
        Ok(z)
    }

    /// Residual of `F(x1*t, x2*t)·F(e,e) = F(x1,x2)·F(t,t)` over a grid of
    /// `(x1, x2, t)` triples.
    pub fn gbrlmp_residual(&self, grid: &[(f64, f64, f64)]) -> Result<BivariateResidual> {
        self.gbrlmp_residual_with(|a, b| self.joint_cdf(a, b), grid)
    }

    /// As [`gbrlmp_residual`](Self::gbrlmp_residual) with the shifted slot
    /// `F(x1*t, x2*t)` evaluated through a caller-supplied function.
    pub fn gbrlmp_residual_with(
        &self,
        shifted_slot_cdf: impl Fn(f64, f64) -> f64,
        grid: &[(f64, f64, f64)],
    ) -> Result<BivariateResidual> {
        if grid.is_empty() {
            return Err(Error::Domain("empty residual grid".into()));
        }
        let e = self.op.identity();
        let f_ee = self.joint_cdf(e, e);
        let mut max_abs = 0.0_f64;
        let mut argmax = grid[0];
        for &(x1, x2, t) in grid {
            self.validate_x(x1, "x1")?;
            self.validate_x(x2, "x2")?;
            self.validate_t(t)?;
            let z1 = self.shifted_combine(x1, t)?;
            let z2 = self.shifted_combine(x2, t)?;
            let r = (shifted_slot_cdf(z1, z2) * f_ee
                - self.joint_cdf(x1, x2) * self.joint_cdf(t, t))
            .abs();
            if r > max_abs {
                max_abs = r;
                argmax = (x1, x2, t);
            }
        }
        Ok(BivariateResidual { max_abs, argmax })
    }

    /// Residual of the two-shift equation
    /// `F(x1*t1, x2*t2)·F(e,e) = F(x1,x2)·F(t1,t2)` over `(x1, x2, t1, t2)`
    /// tuples. Vanishes identically iff `λ12 = 0`.
    pub fn direct_extension_residual(
        &self,
        grid: &[(f64, f64, f64, f64)],
    ) -> Result<DirectExtensionResidual> {
        if grid.is_empty() {
            return Err(Error::Domain("empty residual grid".into()));
        }
        let e = self.op.identity();
        let f_ee = self.joint_cdf(e, e);
        let mut max_abs = 0.0_f64;
        let mut argmax = grid[0];
        for &(x1, x2, t1, t2) in grid {
            self.validate_x(x1, "x1")?;
            self.validate_x(x2, "x2")?;
            self.validate_t(t1)?;
            self.validate_t(t2)?;
            let z1 = self.shifted_combine(x1, t1)?;
            let z2 = self.shifted_combine(x2, t2)?;
            let r = (self.joint_cdf(z1, z2) * f_ee
                - self.joint_cdf(x1, x2) * self.joint_cdf(t1, t2))
            .abs();
            if r > max_abs {
                max_abs = r;
                argmax = (x1, x2, t1, t2);
            }
        }
        Ok(DirectExtensionResidual { max_abs, argmax })
    }

    /// Density of the absolutely continuous part off the diagonal: the
    /// mixed partial of the joint distribution function, which on
    /// `x1 < x2` is
    ///
    /// ```text
    /// (λ1+λ12)·g'(x1) · λ2·g'(x2) · exp[(λ1+λ12)·s1 + λ2·s2]
    /// ```
    ///
    /// and symmetrically for `x1 > x2`.
    pub fn ac_density(&self, x1: f64, x2: f64) -> Result<f64> {
        self.validate_x(x1, "x1")?;
        self.validate_x(x2, "x2")?;
        if x1 == x2 {
            return Err(Error::Domain(
                "density undefined on the diagonal x1 = x2".into(),
            ));
        }
        let s1 = self.shifted_gen(x1);
        let s2 = self.shifted_gen(x2);
        let gp1 = self.op.g_prime(x1)?;
        let gp2 = self.op.g_prime(x2)?;
        let (r1, r2) = if x1 < x2 {
            (self.lambda1 + self.lambda12, self.lambda2)
        } else {
            (self.lambda1, self.lambda2 + self.lambda12)
        };
        Ok(r1 * gp1 * r2 * gp2 * (r1 * s1 + r2 * s2).exp())
    }

    /// Grid of `(x1, x2, t)` triples satisfying the single-shift
    /// constraints, built from marginal quantiles and a generator-space
    /// ladder of shifts.
    pub fn standard_residual_grid(&self, nx: usize, nt: usize) -> Result<Vec<(f64, f64, f64)>> {
        let (x1s, x2s, ts) = self.grid_axes(nx, nt)?;
        let mut grid = Vec::with_capacity(nx * nx * nt);
        for &x1 in &x1s {
            for &x2 in &x2s {
                for &t in &ts {
                    grid.push((x1, x2, t));
                }
            }
        }
        Ok(grid)
    }

    /// Grid of `(x1, x2, t1, t2)` tuples for the two-shift equation,
    /// including tuples with `t1 ≠ t2`.
    pub fn standard_direct_grid(
        &self,
        nx: usize,
        nt: usize,
    ) -> Result<Vec<(f64, f64, f64, f64)>> {
        let (x1s, x2s, ts) = self.grid_axes(nx, nt)?;
        let mut grid = Vec::with_capacity(nx * nx * nt * nt);
        for &x1 in &x1s {
            for &x2 in &x2s {
                for &t1 in &ts {
                    for &t2 in &ts {
                        grid.push((x1, x2, t1, t2));
                    }
                }
            }
        }
        Ok(grid)
    }

    fn grid_axes(&self, nx: usize, nt: usize) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
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
        let m1 = self.marginal(Margin::X1);
        let m2 = self.marginal(Margin::X2);
        // stay clear of a finite lower boundary, where floating point
        // cannot resolve the boundary gap (see the univariate grid)
        let p_lo = m1.lower_probe_quantile()?.max(m2.lower_probe_quantile()?);
        let p_hi = 0.98;
        let mut x1s = Vec::with_capacity(nx);
        let mut x2s = Vec::with_capacity(nx);
        for i in 0..nx {
            let p = p_lo + (p_hi - p_lo) * i as f64 / (nx.max(2) - 1) as f64;
            x1s.push(m1.quantile(p)?);
            x2s.push(m2.quantile(p)?);
        }
        let u_from_x1 = -(p_hi.ln()) / m1.c();
        let u_from_x2 = -(p_hi.ln()) / m2.c();
        let u_cap_from_b = self.g_b - self.op.g_at(e)?;
        let u_max = u_from_x1.min(u_from_x2).min(u_cap_from_b).max(0.0) * (1.0 - 1e-9);
        let mut ts = Vec::with_capacity(nt);
        for j in 0..nt {
            let u = if nt == 1 {
                0.0
            } else {
                u_max * j as f64 / (nt - 1) as f64
            };
            ts.push(if u == 0.0 { e } else { self.op.g_inv_at(u) });
        }
        Ok((x1s, x2s, ts))
    }

    /// Split the truncated measure on `[e, b)²` into its discrete,
    /// singular and absolutely continuous masses.
    ///
    /// The corner atom at `(e, e)` has mass `exp(-k·g(b))`; the edge atoms
    /// collect the mass of `{e} × (e, b)` and `(e, b) × {e}` (marginal atom
    /// minus the corner). The diagonal mass has the closed form
    /// `(λ12/k)·(1 - exp(-k·g(b)))` — the tie probability scaled by the
    /// mass not already sitting in the corner. The absolutely continuous
    /// mass is a tensor-product Gauss-Legendre quadrature of the
    /// off-diagonal density over both triangles, carried out in generator
    /// space where the integrand is a product of exponentials. Summation
    /// order is fixed, so results are bit-reproducible.
    pub fn decompose(&self, config: DecomposeConfig) -> Result<DecompositionReport> {
        self.supports_truncation()?;
        if config.nodes == 0 {
            return Err(Error::InvalidParameter(
                "quadrature needs at least one node per axis".into(),
            ));
        }
        let e = self.op.identity();
        let k = self.rate_sum();
        let s0 = -self.g_b;
        let corner = (k * s0).exp();
        let m1_atom = ((self.lambda1 + self.lambda12) * s0).exp();
        let m2_atom = ((self.lambda2 + self.lambda12) * s0).exp();
        let atoms = vec![
            AtomMass {
                label: "identity_corner".into(),
                location: (e, e),
                mass: corner,
            },
            AtomMass {
                label: "x1_at_identity_edge".into(),
                location: (e, self.b),
                mass: m1_atom - corner,
            },
            AtomMass {
                label: "x2_at_identity_edge".into(),
                location: (self.b, e),
                mass: m2_atom - corner,
            },
        ];
        let singular = self.tie_probability() * (1.0 - corner);

        // AC mass over {s0 < s1 < s2 < 0} with density
        // (λ1+λ12)·λ2·exp[(λ1+λ12)s1 + λ2·s2], plus the mirrored triangle.
        let rule = GaussLegendre::new(config.nodes);
        let (la, lb, lc) = (self.lambda1, self.lambda2, self.lambda12);
        let lower_tri = rule.integrate(s0, 0.0, |s2| {
            lb * (lb * s2).exp()
                * rule.integrate(s0, s2, |s1| (la + lc) * ((la + lc) * s1).exp())
        });
        let upper_tri = rule.integrate(s0, 0.0, |s1| {
            la * (la * s1).exp()
                * rule.integrate(s0, s1, |s2| (lb + lc) * ((lb + lc) * s2).exp())
        });
        let ac = lower_tri + upper_tri;

        let total = atoms.iter().map(|a| a.mass).sum::<f64>() + singular + ac;
        if (total - 1.0).abs() > config.mass_tolerance {
            return Err(Error::Quadrature(format!(
                "mass balance defect {:.3e} exceeds tolerance {:.1e} at {} nodes",
                (total - 1.0).abs(),
                config.mass_tolerance,
                config.nodes
            )));
        }
        Ok(DecompositionReport {
            atoms,
            singular_mass: singular,
            ac_mass: ac,
            total,
        })
    }
}
