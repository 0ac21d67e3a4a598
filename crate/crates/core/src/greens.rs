//! Finite-N quaternionic Green's function, the regularized density `rho_eps`,
//! and Monte Carlo sampling of the perturbation `X + eps A B^{-1}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::draw_ratio;
use crate::error::{Error, Result};
use crate::linalg::doubled::{build_doubled, check_resolvent_bound, norm_2x2};
use crate::linalg::{eigenvalues, ComplexMatrix};
use crate::quaternion::{Mat2, Quaternion};
use crate::rng::sub_rng;

/// Tolerance of the structural check on the averaged block.
const PATTERN_TOL: f64 = 1e-9;

/// `G(q; X)` together with its arguments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreenSample {
    pub q: Quaternion,
    pub g: Quaternion,
    pub n: usize,
}

impl GreenSample {
    pub fn evaluate(x: &ComplexMatrix, q: Quaternion) -> Result<Self> {
        Ok(Self { q, g: green(x, q)?, n: x.n() })
    }
}

/// Average of the diagonal 2x2 blocks of `(X - q)^{-1}`, read back as a quaternion.
pub fn green(x: &ComplexMatrix, q: Quaternion) -> Result<Quaternion> {
    let eps = q.b.norm();
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "green needs a nonzero hypercomplex part, got q = {q}"
        )));
    }
    let blocks = build_doubled(x, q).inverse_diagonal_blocks()?;
    let n = blocks.len() as f64;
    let mut avg: Mat2 = [[Complex64::new(0.0, 0.0); 2]; 2];
    for b in &blocks {
        check_resolvent_bound(norm_2x2(b), eps)?;
        for r in 0..2 {
            for s in 0..2 {
                avg[r][s] += b[r][s];
            }
        }
    }
    for row in avg.iter_mut() {
        for z in row.iter_mut() {
            *z /= n;
        }
    }
    let deviation = Quaternion::pattern_deviation(&avg);
    let g = Quaternion::from_matrix(&avg);
    if deviation > PATTERN_TOL * g.norm().max(1.0) {
        return Err(Error::Structure { deviation });
    }
    check_resolvent_bound(g.norm(), eps)?;
    if q.b.im == 0.0 && q.b.re > 0.0 && g.b.re < -1e-12 {
        return Err(Error::Structure { deviation: -g.b.re });
    }
    Ok(g)
}

/// Complex part of a Green's function as a function of `lambda` at fixed `eps`.
pub(crate) fn density_from_alpha(
    alpha: impl Fn(Complex64) -> Result<Complex64>,
    lambda: Complex64,
    h: f64,
) -> Result<f64> {
    let dx = (alpha(lambda + h)? - alpha(lambda - h)?) / (2.0 * h);
    let dy = (alpha(lambda + Complex64::new(0.0, h))? - alpha(lambda - Complex64::new(0.0, h))?) / (2.0 * h);
    let dbar = 0.5 * (dx + Complex64::new(0.0, 1.0) * dy);
    Ok(-dbar.re / PI)
}

pub fn default_step(lambda: Complex64) -> f64 {
    1e-5 * lambda.norm().max(1.0)
}

/// `rho_eps(lambda; X) = -(1/pi) Re d/d(conj lambda)` of the complex part of `G(lambda + eps j; X)`,
/// by central differences with step `h` (default `1e-5 max(1, |lambda|)`).
pub fn rho_eps(x: &ComplexMatrix, lambda: Complex64, eps: f64, h: Option<f64>) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let h = h.unwrap_or_else(|| default_step(lambda));
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let alpha = |l: Complex64| green(x, Quaternion::spectral(l, eps)).map(|g| g.a);
    let rho = density_from_alpha(alpha, lambda, h)?;
    if cfg!(debug_assertions) {
        let half = density_from_alpha(alpha, lambda, 0.5 * h)?;
        debug_assert!(
            (rho - half).abs() <= 1e-4,
            "Richardson check failed at lambda = {lambda}: {rho} vs {half}"
        );
    }
    debug_assert!(rho >= -1e-6, "negative regularized density {rho} at {lambda}");
    Ok(rho)
}

/// `(1/(pi N)) sum_i [eps / (eps^2 + |lambda_i - lambda|^2)]^2`, the regularized density
/// of a normal matrix with spectrum `eigs`.
pub fn normal_smoothing(eigs: &[Complex64], lambda: Complex64, eps: f64) -> f64 {
    let e2 = eps * eps;
    let sum: f64 = eigs
        .iter()
        .map(|z| {
            let k = eps / (e2 + (z - lambda).norm_sqr());
            k * k
        })
        .sum();
    sum / (PI * eigs.len() as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSamples {
    pub eigenvalues: Vec<Complex64>,
    /// Draws of `B` rejected as numerically singular.
    pub redraws: usize,
}

/// Eigenvalues of `X + eps A B^{-1}` pooled over `trials` independent draws of
/// standard complex Gaussian `A`, `B`. Trial `k` uses the stream `seed ^ k`.
pub fn perturbation_mc(x: &ComplexMatrix, eps: f64, trials: usize, seed: u64) -> Result<PerturbationSamples> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let n = x.n();
    let per_trial: Vec<(Vec<Complex64>, usize)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = sub_rng(seed, k as u64);
            let (ratio, redraws) = draw_ratio(n, &mut rng)?;
            let m = x.add(&ratio.scaled(Complex64::new(eps, 0.0)))?;
            Ok((eigenvalues(&m)?, redraws))
        })
        .collect::<Result<_>>()?;
    let mut out = PerturbationSamples {
        eigenvalues: Vec::with_capacity(n * trials),
        redraws: 0,
    };
    for (vals, redraws) in per_trial {
        out.eigenvalues.extend(vals);
        out.redraws += redraws;
    }
    Ok(out)
}
