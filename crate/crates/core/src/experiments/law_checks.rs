//! Monte Carlo spectra of the worked examples against their closed-form densities.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::{
    family_green_evaluators, operator_matrix, sample_random, sample_ratio, CauchyLimit, DeterministicFamily,
    EnsembleSpec, EntryDistribution,
};
use crate::error::{Error, Result};
use crate::experiments::report::{ks_distance, Check, ComparisonReport};
use crate::experiments::thresholds::{
    CAUCHY_PRODUCT_REL_DEV, ELLIPTIC_EDGE_MARGIN, ELLIPTIC_INSIDE_FRACTION, ELLIPTIC_RADIUS_SQR, ELLIPTIC_REL_DEV,
    SPHERICAL_KS, STEPHANOV_REL_DEV,
};
use crate::laws::{
    cauchy_product_beta_tilde, cauchy_product_density, ellipse_radius_sqr, log_modulus_cdf, nu_gamma,
    predict_density, spherical_radial_cdf, stephanov_half_width, stephanov_profile, stephanov_support, Law,
    SolveConfig,
};
use crate::linalg::eigenvalues;
use crate::quad::integrate;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EllipticConfig {
    pub n: usize,
    pub tau: f64,
    pub distribution: EntryDistribution,
    pub seed: u64,
}

impl Default for EllipticConfig {
    fn default() -> Self {
        Self { n: 2000, tau: 0.0, distribution: EntryDistribution::ComplexGaussian, seed: 100 }
    }
}

/// Cells of size `0.4(1+tau) x 0.4(1-tau)` on a lattice through the origin whose corners lie
/// inside the ellipse and at least `margin` away from it.
pub fn interior_cells(tau: f64, margin: f64) -> Vec<[f64; 4]> {
    let (a, b) = (1.0 + tau, 1.0 - tau);
    let (hx, hy) = (0.4 * a, 0.4 * b);
    let boundary: Vec<Complex64> = (0..4000)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 4000.0;
            Complex64::new(a * t.cos(), b * t.sin())
        })
        .collect();
    let distance = |z: Complex64| boundary.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min);
    let mut cells = Vec::new();
    for i in -3i32..3 {
        for j in -3i32..3 {
            let (x0, x1, y0, y1) = (i as f64 * hx, (i + 1) as f64 * hx, j as f64 * hy, (j + 1) as f64 * hy);
            let corners = [Complex64::new(x0, y0), Complex64::new(x1, y0), Complex64::new(x0, y1), Complex64::new(x1, y1)];
            if corners.iter().all(|z| ellipse_radius_sqr(*z, tau) < 1.0 && distance(*z) >= margin) {
                cells.push([x0, x1, y0, y1]);
            }
        }
    }
    cells
}

pub fn run_elliptic(cfg: &EllipticConfig) -> Result<ComparisonReport> {
    let start = Instant::now();
    if !(0.0..1.0).contains(&cfg.tau) {
        return Err(Error::InvalidArgument(format!("elliptic check needs 0 <= tau < 1, got {}", cfg.tau)));
    }
    let spec = EnsembleSpec { n: cfg.n, tau: cfg.tau, distribution: cfg.distribution, seed: cfg.seed };
    let eigs = eigenvalues(&sample_random(&spec)?)?;
    let n = eigs.len() as f64;
    let inside = eigs.iter().filter(|z| ellipse_radius_sqr(**z, cfg.tau) <= ELLIPTIC_RADIUS_SQR).count() as f64 / n;
    let expected = 1.0 / (PI * (1.0 - cfg.tau * cfg.tau));
    let cells = interior_cells(cfg.tau, ELLIPTIC_EDGE_MARGIN);
    let mut worst = 0.0f64;
    for [x0, x1, y0, y1] in &cells {
        let count = eigs.iter().filter(|z| z.re >= *x0 && z.re < *x1 && z.im >= *y0 && z.im < *y1).count();
        let density = count as f64 / (n * (x1 - x0) * (y1 - y0));
        worst = worst.max((density / expected - 1.0).abs());
    }

    let mut report = ComparisonReport::new("elliptic");
    report.extra("inside_fraction", inside);
    report.extra("worst_relative_deviation", worst);
    report.push_check(Check::at_least("inside_fraction", inside, ELLIPTIC_INSIDE_FRACTION));
    report.push_check(Check::at_least("interior_bins", cells.len() as f64, 1.0));
    report.push_check(Check::below("worst_relative_deviation", worst, ELLIPTIC_REL_DEV));
    report.n_samples = eigs.len();
    report.bins = cells.len();
    report.config = serde_json::to_value(cfg)?;
    report.seeds = vec![cfg.seed];
    report.note("calibration", "N = 2000, seeds 100..=103: worst interior deviation <= 0.054, inside fraction >= 0.99");
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StephanovConfig {
    pub n: usize,
    pub mu: f64,
    pub seed: u64,
    /// Edges of the `|Im lambda|` bins compared with the prediction.
    pub edges: Vec<f64>,
}

impl Default for StephanovConfig {
    fn default() -> Self {
        Self { n: 2000, mu: 1.0, seed: 3, edges: vec![0.4, 0.5, 0.6, 0.7, 0.8] }
    }
}

/// Probe points for the support sign: the first two are `0.5i` (inside) and `2i` (outside).
pub const STEPHANOV_PROBES: [(f64, f64); 10] = [
    (0.0, 0.5),
    (0.0, 2.0),
    (0.3, 0.5),
    (-0.5, 0.6),
    (0.2, -0.7),
    (1.5, 0.5),
    (0.0, 1.3),
    (-2.5, 0.2),
    (0.5, -0.1),
    (0.1, -0.4),
];

/// Predicted fraction of eigenvalues with `|Im lambda|` in `[y0, y1]`: twice the integral over
/// `y` of the support width `2 w(y)` times the density profile.
pub fn stephanov_band_mass(y0: f64, y1: f64, mu: f64) -> Result<f64> {
    let one_side = integrate(
        |y| Ok(2.0 * stephanov_half_width(y, mu)? * stephanov_profile(y, mu)?),
        y0,
        y1,
        1e-10,
    )?;
    Ok(2.0 * one_side)
}

pub fn run_stephanov(cfg: &StephanovConfig) -> Result<ComparisonReport> {
    let start = Instant::now();
    if cfg.edges.len() < 2 || cfg.edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("bin edges must increase".into()));
    }
    let family = DeterministicFamily::Stephanov { mu: cfg.mu };
    let gue = sample_random(&EnsembleSpec::gaussian(cfg.n, 1.0, cfg.seed))?;
    let eigs = eigenvalues(&gue.add(&operator_matrix(&family, cfg.n)?)?)?;
    let n = eigs.len() as f64;

    let mut report = ComparisonReport::new("stephanov");
    let mut worst = 0.0f64;
    for w in cfg.edges.windows(2) {
        let count = eigs.iter().filter(|z| z.im.abs() >= w[0] && z.im.abs() < w[1]).count() as f64 / n;
        let predicted = stephanov_band_mass(w[0], w[1], cfg.mu)?;
        let dev = (count / predicted - 1.0).abs();
        report.extra(format!("band_{:.2}_{:.2}", w[0], w[1]), count / predicted);
        worst = worst.max(dev);
    }
    report.extra("worst_relative_deviation", worst);
    report.push_check(Check::below("worst_relative_deviation", worst, STEPHANOV_REL_DEV));

    let evals = family_green_evaluators(&family)?;
    let law = Law::sum(evals.direct.as_ref(), 1.0);
    let solve_cfg = SolveConfig::for_bound(evals.norm_bound);
    let mut agree = 0usize;
    for (x, y) in STEPHANOV_PROBES {
        let l = Complex64::new(x, y);
        let closed = stephanov_support(l, cfg.mu)? > 0.0;
        let solved = predict_density(&law, l, &solve_cfg)?.in_support;
        agree += (closed == solved) as usize;
    }
    let ends_ok = stephanov_support(Complex64::new(0.0, 0.5), cfg.mu)? > 0.0
        && stephanov_support(Complex64::new(0.0, 2.0), cfg.mu)? < 0.0;
    report.extra("support_probes_agreeing", agree as f64);
    report.push_check(Check::at_least("support_probes_agreeing", agree as f64, STEPHANOV_PROBES.len() as f64));
    report.push_check(Check::holds("half_i_inside_two_i_outside", ends_ok));
    report.n_samples = eigs.len();
    report.bins = cfg.edges.len() - 1;
    report.config = serde_json::to_value(cfg)?;
    report.seeds = vec![cfg.seed];
    report.note("calibration", "N = 2000, mu = 1, seed 3: band ratios within 5%, 97.4% of eigenvalues inside the support");
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SphericalConfig {
    pub n: usize,
    pub draws: usize,
    pub seed: u64,
}

impl Default for SphericalConfig {
    fn default() -> Self {
        Self { n: 100, draws: 100, seed: 1 }
    }
}

/// `|lambda|` of `A B^{-1}` pooled over draws (draw `k` uses stream `seed ^ k`) against `r^2/(1 + r^2)`.
pub fn run_spherical(cfg: &SphericalConfig) -> Result<ComparisonReport> {
    let start = Instant::now();
    if cfg.draws == 0 {
        return Err(Error::InvalidArgument("draws must be at least 1".into()));
    }
    let radii: Vec<f64> = (0..cfg.draws)
        .into_par_iter()
        .map(|k| Ok(eigenvalues(&sample_ratio(cfg.n, cfg.seed ^ k as u64)?)?.iter().map(|z| z.norm()).collect()))
        .collect::<Result<Vec<Vec<f64>>>>()?
        .concat();
    let ks = ks_distance(&radii, spherical_radial_cdf)?;
    let mut report = ComparisonReport::new("spherical");
    report.metrics.ks = Some(ks);
    report.push_check(Check::below("ks_modulus", ks, SPHERICAL_KS));
    report.n_samples = radii.len();
    report.config = serde_json::to_value(cfg)?;
    report.seeds = vec![cfg.seed];
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CauchyProductConfig {
    pub radii: Vec<f64>,
    pub solve: SolveConfig,
}

impl Default for CauchyProductConfig {
    fn default() -> Self {
        Self { radii: vec![0.25, 0.5, 1.0, 2.0, 3.0], solve: SolveConfig::default() }
    }
}

/// Product-rule densities with the Cauchy-limit evaluators against the closed form, plus the
/// normalization and change-of-variables identities of the log-modulus law.
pub fn run_cauchy_product(cfg: &CauchyProductConfig) -> Result<ComparisonReport> {
    let start = Instant::now();
    let law = Law::product(&CauchyLimit, &CauchyLimit, 0.0);
    let points: Vec<Complex64> = cfg.radii.iter().enumerate().map(|(k, r)| Complex64::from_polar(*r, 0.7 * k as f64)).collect();
    let predictions = points
        .par_iter()
        .map(|l| predict_density(&law, *l, &cfg.solve))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ComparisonReport::new("cauchy-product");
    let (mut worst_rho, mut worst_beta) = (0.0f64, 0.0f64);
    for (l, p) in points.iter().zip(&predictions) {
        let exact = cauchy_product_density(*l)?;
        worst_rho = worst_rho.max((p.rho / exact - 1.0).abs());
        worst_beta = worst_beta.max((p.beta_zero - cauchy_product_beta_tilde(*l)).abs());
    }
    let mass = integrate(|g| Ok(nu_gamma(g)), -20.0, 20.0, 1e-10)?;
    let identity = (-40..=40)
        .map(|k| {
            let g = k as f64 / 10.0;
            let e = g.exp();
            Ok((nu_gamma(g) - 2.0 * PI * e * e * cauchy_product_density(Complex64::new(e, 0.0))?).abs())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let cdf_end = (log_modulus_cdf(20.0) - log_modulus_cdf(-20.0) - mass).abs();
    report.extra("worst_relative_density_deviation", worst_rho);
    report.extra("worst_beta_tilde_deviation", worst_beta);
    report.extra("nu_mass", mass);
    report.push_check(Check::below("worst_relative_density_deviation", worst_rho, CAUCHY_PRODUCT_REL_DEV));
    report.push_check(Check::below("worst_beta_tilde_deviation", worst_beta, 1e-3));
    report.push_check(Check::below("nu_mass_error", (mass - 1.0).abs(), 1e-6));
    report.push_check(Check::below("nu_identity_error", identity, 1e-12));
    report.push_check(Check::below("cdf_consistency", cdf_end, 1e-8));
    report.n_samples = points.len();
    report.config = serde_json::to_value(cfg)?;
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
