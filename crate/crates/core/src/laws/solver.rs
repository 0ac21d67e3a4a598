//! Fixed-point solvers for the sum and product rules and the eps-continuation to the density.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{GreenEvaluator, NormBound};
use crate::error::{Error, Result};
use crate::greens::{default_step, density_from_alpha};
use crate::linalg::doubled::check_resolvent_bound;
use crate::quaternion::Quaternion;

/// Below this `|t . G~|` the product-rule normalization is treated as singular.
pub const NORMALIZATION_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveConfig {
    /// Fixed-point residual `|g_{k+1} - g_k|` at which iteration stops.
    pub tol: f64,
    pub max_iter: usize,
    /// First continuation step. Contraction is guaranteed above 1 (sum rule) and
    /// above `2d` (product rule; the argument itself only needs `d`).
    pub eps_start: f64,
    pub eps_min: f64,
    pub eps_factor: f64,
    pub beta_threshold: f64,
    /// Each step moves `g` by `relaxation (F(g) - g)`; 1 is the plain map `g <- F(g)`.
    /// Values below 1 damp the near-`-1` Jacobian eigenvalue that appears inside the
    /// support as eps -> 0 (at `lambda = 0` the plain map needs ~2e4 steps at eps = 1e-3).
    pub relaxation: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self::for_bound(NormBound::Unbounded)
    }
}

impl SolveConfig {
    /// Defaults with `eps_start = 1.25 max(2, 2d)`, or 2.5 when no bound `d` is known.
    pub fn for_bound(bound: NormBound) -> Self {
        Self {
            tol: 1e-12,
            max_iter: 10_000,
            eps_start: default_eps_start(bound),
            eps_min: 1e-3,
            eps_factor: 0.85,
            beta_threshold: 1e-4,
            relaxation: 0.7,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be at least 1".into());
        }
        if !(self.eps_factor > 0.0 && self.eps_factor < 1.0) {
            return bad(format!("eps_factor must lie in (0, 1), got {}", self.eps_factor));
        }
        if !(self.eps_min > 0.0 && self.eps_min < self.eps_start && self.eps_start.is_finite()) {
            return bad(format!(
                "need 0 < eps_min < eps_start, got eps_min = {}, eps_start = {}",
                self.eps_min, self.eps_start
            ));
        }
        if !(self.relaxation > 0.0 && self.relaxation <= 1.0) {
            return bad(format!("relaxation must lie in (0, 1], got {}", self.relaxation));
        }
        if !(self.beta_threshold >= 0.0) {
            return bad(format!("beta_threshold must be nonnegative, got {}", self.beta_threshold));
        }
        Ok(())
    }

    /// The decreasing continuation schedule from `eps_start` to `eps_min`, both included.
    pub fn schedule(&self) -> Vec<f64> {
        let mut out = vec![self.eps_start];
        let mut eps = self.eps_start;
        while eps > self.eps_min {
            eps = (eps * self.eps_factor).max(self.eps_min);
            out.push(eps);
        }
        out
    }
}

pub fn default_eps_start(bound: NormBound) -> f64 {
    match bound {
        NormBound::Bounded(d) => 2f64.max(2.0 * d) * 1.25,
        NormBound::Unbounded => 2.5,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub g: Quaternion,
    /// `G~` of the product rule.
    pub g_tilde: Option<Quaternion>,
    pub iterations: usize,
    pub residual: f64,
    /// `beta > beta_threshold`, where `beta` is taken from `G~` for the product rule.
    pub in_support: bool,
}

impl SolveResult {
    /// Hypercomplex part used for support decisions.
    pub fn support_beta(&self) -> f64 {
        self.g_tilde.unwrap_or(self.g).b.norm()
    }
}

fn eval_checked(gd: &dyn GreenEvaluator, p: Quaternion) -> Result<Quaternion> {
    let g = gd.eval(p)?;
    if !g.is_finite() {
        return Err(Error::InvalidArgument(format!("evaluator `{}` returned {g} at {p}", gd.name())));
    }
    check_resolvent_bound(g.norm(), p.b.norm())?;
    Ok(g)
}

/// `g -> G_D(q + t . g)`.
pub struct SumMap<'a> {
    gd: &'a dyn GreenEvaluator,
    q: Quaternion,
    t: Quaternion,
}

impl<'a> SumMap<'a> {
    pub fn new(gd: &'a dyn GreenEvaluator, q: Quaternion, tau: f64) -> Self {
        Self { gd, q, t: Quaternion::t(tau) }
    }

    pub fn apply(&self, g: Quaternion) -> Result<Quaternion> {
        eval_checked(self.gd, self.q + self.t.dot(&g))
    }
}

/// `G~ -> -q^{-1} G_{D^{-1}}(-(t . G~) q^{-1})`.
pub struct ProductMap<'a> {
    gdinv: &'a dyn GreenEvaluator,
    q_inv: Quaternion,
    t: Quaternion,
}

impl<'a> ProductMap<'a> {
    pub fn new(gdinv: &'a dyn GreenEvaluator, q: Quaternion, tau: f64) -> Result<Self> {
        Ok(Self { gdinv, q_inv: q.inv()?, t: Quaternion::t(tau) })
    }

    pub fn apply(&self, g_tilde: Quaternion) -> Result<Quaternion> {
        let arg = -(self.t.dot(&g_tilde) * self.q_inv);
        Ok(-(self.q_inv * eval_checked(self.gdinv, arg)?))
    }
}

/// `G = -(t . G~)^{-1} G_D(-q (t . G~)^{-1})`.
pub fn product_green(gd: &dyn GreenEvaluator, q: Quaternion, tau: f64, g_tilde: Quaternion) -> Result<Quaternion> {
    let s = Quaternion::t(tau).dot(&g_tilde);
    if s.norm() < NORMALIZATION_FLOOR {
        return Err(Error::SingularNormalization(s.norm()));
    }
    let s_inv = s.inv()?;
    Ok(-(s_inv * eval_checked(gd, -(q * s_inv))?))
}

fn iterate(
    what: &'static str,
    map: impl Fn(Quaternion) -> Result<Quaternion>,
    g0: Quaternion,
    cfg: &SolveConfig,
) -> Result<(Quaternion, usize, f64)> {
    let mut g = g0;
    let mut residual = f64::INFINITY;
    for k in 1..=cfg.max_iter {
        let next = map(g)?;
        residual = (next - g).norm();
        if residual <= cfg.tol {
            return Ok((next, k, residual));
        }
        g = g + (next - g).scale(cfg.relaxation);
    }
    Err(Error::NonConvergence { what, iterations: cfg.max_iter, residual })
}

fn check_q(q: Quaternion) -> Result<()> {
    if !(q.is_finite() && q.b.norm() > 0.0) {
        return Err(Error::InvalidArgument(format!("solver needs a finite q with nonzero hypercomplex part, got {q}")));
    }
    Ok(())
}

/// Fixed point of the sum rule, iterated from `-q^{-1}`.
pub fn solve_sum(gd: &dyn GreenEvaluator, q: Quaternion, tau: f64, cfg: &SolveConfig) -> Result<SolveResult> {
    check_q(q)?;
    solve_sum_from(gd, q, tau, -q.inv()?, cfg)
}

pub fn solve_sum_from(
    gd: &dyn GreenEvaluator,
    q: Quaternion,
    tau: f64,
    g0: Quaternion,
    cfg: &SolveConfig,
) -> Result<SolveResult> {
    cfg.validate()?;
    check_q(q)?;
    let map = SumMap::new(gd, q, tau);
    let (g, iterations, residual) = iterate("sum rule", |g| map.apply(g), g0, cfg)?;
    Ok(SolveResult { g, g_tilde: None, iterations, residual, in_support: g.b.norm() > cfg.beta_threshold })
}

/// Fixed point `G~` of the product rule from `-q^{-1}`, then `G` from it.
pub fn solve_product(
    gd: &dyn GreenEvaluator,
    gdinv: &dyn GreenEvaluator,
    q: Quaternion,
    tau: f64,
    cfg: &SolveConfig,
) -> Result<SolveResult> {
    check_q(q)?;
    solve_product_from(gd, gdinv, q, tau, -q.inv()?, cfg)
}

pub fn solve_product_from(
    gd: &dyn GreenEvaluator,
    gdinv: &dyn GreenEvaluator,
    q: Quaternion,
    tau: f64,
    g_tilde0: Quaternion,
    cfg: &SolveConfig,
) -> Result<SolveResult> {
    cfg.validate()?;
    check_q(q)?;
    let map = ProductMap::new(gdinv, q, tau)?;
    let (g_tilde, iterations, residual) = iterate("product rule", |g| map.apply(g), g_tilde0, cfg)?;
    let g = product_green(gd, q, tau, g_tilde)?;
    Ok(SolveResult {
        g,
        g_tilde: Some(g_tilde),
        iterations,
        residual,
        in_support: g_tilde.b.norm() > cfg.beta_threshold,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Sum,
    Product,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::Sum => "sum",
            Rule::Product => "product",
        }
    }
}

impl std::str::FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Rule::Sum),
            "product" => Ok(Rule::Product),
            other => Err(Error::InvalidArgument(format!("unknown rule `{other}` (expected sum or product)"))),
        }
    }
}

/// A sum or product law with its `G_D` (and `G_{D^{-1}}` for the product rule).
#[derive(Clone, Copy)]
pub struct Law<'a> {
    pub rule: Rule,
    pub gd: &'a dyn GreenEvaluator,
    pub gdinv: Option<&'a dyn GreenEvaluator>,
    pub tau: f64,
}

impl<'a> Law<'a> {
    pub fn sum(gd: &'a dyn GreenEvaluator, tau: f64) -> Self {
        Self { rule: Rule::Sum, gd, gdinv: None, tau }
    }

    pub fn product(gd: &'a dyn GreenEvaluator, gdinv: &'a dyn GreenEvaluator, tau: f64) -> Self {
        Self { rule: Rule::Product, gd, gdinv: Some(gdinv), tau }
    }

    fn missing_inverse(&self) -> Error {
        Error::Unsupported(format!(
            "product rule needs G of D^-1, which `{}` does not provide",
            self.gd.name()
        ))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau.abs() <= 1.0) {
            return Err(Error::InvalidArgument(format!("tau must lie in [-1, 1], got {}", self.tau)));
        }
        if self.rule == Rule::Product && self.gdinv.is_none() {
            return Err(self.missing_inverse());
        }
        Ok(())
    }

    /// One solve at `q` warm-started from `start` (the iterated unknown: `G` or `G~`).
    pub fn solve_from(&self, q: Quaternion, start: Quaternion, cfg: &SolveConfig) -> Result<SolveResult> {
        match (self.rule, self.gdinv) {
            (Rule::Sum, _) => solve_sum_from(self.gd, q, self.tau, start, cfg),
            (Rule::Product, Some(inv)) => solve_product_from(self.gd, inv, q, self.tau, start, cfg),
            (Rule::Product, None) => Err(self.missing_inverse()),
        }
    }

    pub fn solve(&self, q: Quaternion, cfg: &SolveConfig) -> Result<SolveResult> {
        check_q(q)?;
        self.solve_from(q, -q.inv()?, cfg)
    }

    /// Solves along the eps schedule at fixed `lambda`, warm-starting each step.
    pub fn continuation(&self, lambda: Complex64, cfg: &SolveConfig) -> Result<Continuation> {
        self.validate()?;
        cfg.validate()?;
        let mut steps = Vec::new();
        let mut start = -Quaternion::spectral(lambda, cfg.eps_start).inv()?;
        for eps in cfg.schedule() {
            let q = Quaternion::spectral(lambda, eps);
            let r = self.solve_from(q, start, cfg).map_err(|e| e.at_eps(eps))?;
            start = r.g_tilde.unwrap_or(r.g);
            steps.push((eps, r));
        }
        Ok(Continuation { steps })
    }
}

#[derive(Clone, Debug)]
pub struct Continuation {
    /// `(eps, result)` in decreasing eps.
    pub steps: Vec<(f64, SolveResult)>,
}

impl Continuation {
    pub fn last(&self) -> &SolveResult {
        &self.steps.last().expect("schedule has at least one step").1
    }

    /// Support beta extrapolated to `eps = 0` by the Lagrange polynomial through the last
    /// three steps (fewer when the schedule is shorter).
    pub fn beta_at_zero(&self) -> f64 {
        let tail = &self.steps[self.steps.len().saturating_sub(3)..];
        tail.iter()
            .enumerate()
            .map(|(i, (ei, ri))| {
                let weight: f64 = tail
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, (ek, _))| ek / (ek - ei))
                    .product();
                weight * ri.support_beta()
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPrediction {
    pub rho: f64,
    pub in_support: bool,
    /// Support beta at `eps_min`.
    pub beta: f64,
    /// Support beta extrapolated to `eps = 0`.
    pub beta_zero: f64,
    /// The support decision is unreliable: `beta` still changes strongly with eps.
    pub edge: bool,
    /// `G` at `lambda + eps_min j`.
    pub g: Quaternion,
}

/// Limiting density at `lambda`: continuation to `eps_min`, support from the extrapolated beta,
/// and `rho = -(1/pi) Re d/d(conj lambda) alpha` by central differences over four more continuations.
pub fn predict_density(law: &Law<'_>, lambda: Complex64, cfg: &SolveConfig) -> Result<DensityPrediction> {
    let centre = law.continuation(lambda, cfg)?;
    let last = centre.last();
    let beta = last.support_beta();
    let beta_zero = centre.beta_at_zero();
    let ratio = if beta != 0.0 { beta_zero / beta } else { 0.0 };
    let edge = (0.1..=0.9).contains(&ratio);
    let in_support = beta_zero > cfg.beta_threshold;
    let mut out = DensityPrediction { rho: 0.0, in_support, beta, beta_zero, edge, g: last.g };
    if !in_support {
        return Ok(out);
    }
    let alpha = |l: Complex64| -> Result<Complex64> { Ok(law.continuation(l, cfg)?.last().g.a) };
    out.rho = density_from_alpha(alpha, lambda, default_step(lambda))?.max(0.0);
    Ok(out)
}

/// `predict_density` for the sum rule.
pub fn predict_sum_density(
    gd: &dyn GreenEvaluator,
    tau: f64,
    lambda: Complex64,
    cfg: &SolveConfig,
) -> Result<DensityPrediction> {
    predict_density(&Law::sum(gd, tau), lambda, cfg)
}

/// `predict_density` for the product rule.
pub fn predict_product_density(
    gd: &dyn GreenEvaluator,
    gdinv: &dyn GreenEvaluator,
    tau: f64,
    lambda: Complex64,
    cfg: &SolveConfig,
) -> Result<DensityPrediction> {
    predict_density(&Law::product(gd, gdinv, tau), lambda, cfg)
}
