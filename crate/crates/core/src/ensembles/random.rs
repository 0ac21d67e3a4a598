use std::fmt;
use std::str::FromStr;

use faer::Mat;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{condition_number, ComplexMatrix};
use crate::rng::{complex_gaussian, gaussian_mat, rng};

/// Condition number above which `B` is treated as singular and redrawn.
pub const MAX_CONDITION: f64 = 1e12;
/// Consecutive redraws tolerated before giving up.
pub const MAX_REDRAWS: usize = 100;

/// Entry law `xi` of `A_N = xi / sqrt(N)`; all have mean 0 and `E|xi|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryDistribution {
    ComplexGaussian,
    /// Uniform on `{1, i, -1, -i}`.
    PhaseRademacher,
    /// Uniform on the disc of radius `sqrt(2)`.
    UniformDisc,
}

impl EntryDistribution {
    pub const ALL: [EntryDistribution; 3] = [
        EntryDistribution::ComplexGaussian,
        EntryDistribution::PhaseRademacher,
        EntryDistribution::UniformDisc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EntryDistribution::ComplexGaussian => "complex-gaussian",
            EntryDistribution::PhaseRademacher => "phase-rademacher",
            EntryDistribution::UniformDisc => "uniform-disc",
        }
    }

    /// Exact third absolute moment `E|xi|^3`.
    pub fn third_abs_moment(&self) -> f64 {
        match self {
            // |xi|^2 ~ Exp(1), so E|xi|^3 = Gamma(5/2).
            EntryDistribution::ComplexGaussian => 0.75 * std::f64::consts::PI.sqrt(),
            EntryDistribution::PhaseRademacher => 1.0,
            // Radius density 2r/R^2 on [0, R], R = sqrt(2): E r^3 = 2 R^3 / 5.
            EntryDistribution::UniformDisc => 0.4 * 2.0f64.powf(1.5),
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        match self {
            EntryDistribution::ComplexGaussian => complex_gaussian(rng),
            EntryDistribution::PhaseRademacher => match rng.random_range(0..4u8) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            },
            EntryDistribution::UniformDisc => {
                let r = (2.0 * rng.random::<f64>()).sqrt();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                Complex64::from_polar(r, theta)
            }
        }
    }
}

impl fmt::Display for EntryDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntryDistribution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown distribution `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    /// Covariance `E xi_ij xi_ji`.
    pub tau: f64,
    pub distribution: EntryDistribution,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn gaussian(n: usize, tau: f64, seed: u64) -> Self {
        Self { n, tau, distribution: EntryDistribution::ComplexGaussian, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::InvalidArgument(format!("tau must lie in [0, 1], got {}", self.tau)));
        }
        if self.tau != 0.0 && self.distribution != EntryDistribution::ComplexGaussian {
            return Err(Error::Unsupported(format!(
                "tau = {} needs complex-gaussian entries, got {}",
                self.tau, self.distribution
            )));
        }
        Ok(())
    }
}

/// Draws `A_N` with entries `xi_ij / sqrt(N)`.
///
/// Gaussian pairs `(xi_ij, xi_ji)` mix real parts with correlation `+tau` and imaginary
/// parts with `-tau`, so `E xi_ij xi_ji = tau` and `E xi_ij conj(xi_ji) = 0`. Diagonal
/// entries get real/imaginary variances `(1 +- tau)/2`, which makes `tau = 1` exactly Hermitian.
pub fn sample_random(spec: &EnsembleSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let n = spec.n;
    let scale = 1.0 / (n as f64).sqrt();
    let mut rng = rng(spec.seed);
    let mut m = Mat::<Complex64>::zeros(n, n);
    match spec.distribution {
        EntryDistribution::ComplexGaussian => {
            let tau = spec.tau;
            let mix = (1.0 - tau * tau).max(0.0).sqrt();
            let s = std::f64::consts::FRAC_1_SQRT_2 * scale;
            let (sd_re, sd_im) = (((1.0 + tau) / 2.0).sqrt(), ((1.0 - tau) / 2.0).sqrt());
            for i in 0..n {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                m[(i, i)] = Complex64::new(sd_re * re, sd_im * im) * scale;
                for j in i + 1..n {
                    let a1: f64 = rng.sample(StandardNormal);
                    let a2: f64 = rng.sample(StandardNormal);
                    let b1: f64 = rng.sample(StandardNormal);
                    let b2: f64 = rng.sample(StandardNormal);
                    m[(i, j)] = Complex64::new(a1, b1) * s;
                    m[(j, i)] = Complex64::new(tau * a1 + mix * a2, -tau * b1 + mix * b2) * s;
                }
            }
        }
        dist => {
            for j in 0..n {
                for i in 0..n {
                    m[(i, j)] = dist.draw(&mut rng) * scale;
                }
            }
        }
    }
    Ok(ComplexMatrix::from_mat_unchecked(m))
}

/// `A B^{-1}` for independent standard complex Gaussian `A`, `B`, redrawing `B` while
/// its condition number exceeds [`MAX_CONDITION`]. Returns the matrix and the redraw count.
pub fn draw_ratio<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(ComplexMatrix, usize)> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let a = ComplexMatrix::from_mat_unchecked(gaussian_mat(n, 1.0, rng));
    let mut redraws = 0;
    loop {
        let b = ComplexMatrix::from_mat_unchecked(gaussian_mat(n, 1.0, rng));
        if condition_number(&b)? <= MAX_CONDITION {
            return Ok((a.matmul(&b.inverse()?)?, redraws));
        }
        redraws += 1;
        if redraws > MAX_REDRAWS {
            return Err(Error::RedrawLimit(redraws));
        }
    }
}

pub fn sample_ratio(n: usize, seed: u64) -> Result<ComplexMatrix> {
    draw_ratio(n, &mut rng(seed)).map(|(m, _)| m)
}
