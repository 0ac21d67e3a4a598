//! Deterministic random streams and the basic complex draws.

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream for work item `index` of a run seeded with `seed`.
pub fn sub_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

/// Standard complex Gaussian: independent real and imaginary parts of variance 1/2.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `n x n` matrix of i.i.d. standard complex Gaussians times `scale`, filled column by column.
pub fn gaussian_mat<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> Mat<Complex64> {
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] = complex_gaussian(rng) * scale;
        }
    }
    m
}

/// Standard Cauchy variate by inverse CDF.
pub fn standard_cauchy<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    (std::f64::consts::PI * (u - 0.5)).tan()
}
