//! Closed-form limiting densities of the worked examples.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance below which `y^2 = mu^2` counts as the Stephanov pole line.
pub const SINGULAR_LINE_TOL: f64 = 1e-12;

fn check_tau(tau: f64) -> Result<()> {
    if tau == 1.0 {
        return Err(Error::DegenerateSupport("the ellipse collapses to a segment at tau = 1".into()));
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!("tau must lie in [0, 1), got {tau}")));
    }
    Ok(())
}

/// `(x/(1+tau))^2 + (y/(1-tau))^2`; below 1 inside the ellipse.
pub fn ellipse_radius_sqr(lambda: Complex64, tau: f64) -> f64 {
    (lambda.re / (1.0 + tau)).powi(2) + (lambda.im / (1.0 - tau)).powi(2)
}

/// Limiting `(alpha, beta)` of the sum rule with `D = 0` inside the ellipse.
pub fn elliptic_green(lambda: Complex64, tau: f64) -> Result<(Complex64, f64)> {
    check_tau(tau)?;
    let (u, v) = (lambda.re / (1.0 + tau), lambda.im / (tau - 1.0));
    let alpha = -Complex64::new(u, v);
    Ok((alpha, (1.0 - u * u - v * v).max(0.0).sqrt()))
}

pub fn elliptic_density(lambda: Complex64, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(if ellipse_radius_sqr(lambda, tau) < 1.0 { 1.0 / (PI * (1.0 - tau * tau)) } else { 0.0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StephanovDensity {
    pub rho: f64,
    pub in_support: bool,
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!("mu must be positive, got {mu}")));
    }
    Ok(())
}

/// `1 - x^2/4 - (y^2/4)(1 + 2s)^2 / s^2 + s` with `s = y^2 - mu^2`; positive inside the support.
pub fn stephanov_support(lambda: Complex64, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let (x, y) = (lambda.re, lambda.im);
    let s = y * y - mu * mu;
    if s.abs() < SINGULAR_LINE_TOL {
        return Err(Error::SingularLine { y, mu });
    }
    Ok(1.0 - x * x / 4.0 - (y * y / 4.0) * (1.0 + 2.0 * s).powi(2) / (s * s) + s)
}

/// Half-width in `x` of the support at height `y` (zero when the line misses it).
pub fn stephanov_half_width(y: f64, mu: f64) -> Result<f64> {
    let at_axis = stephanov_support(Complex64::new(0.0, y), mu)?;
    Ok(2.0 * at_axis.max(0.0).sqrt())
}

/// `(1/4pi) ((y^2 + mu^2)/(y^2 - mu^2)^2 - 1)` inside the support, 0 outside.
pub fn stephanov_density(lambda: Complex64, mu: f64) -> Result<StephanovDensity> {
    let in_support = stephanov_support(lambda, mu)? > 0.0;
    let rho = if in_support { stephanov_profile(lambda.im, mu)? } else { 0.0 };
    Ok(StephanovDensity { rho, in_support })
}

/// The density formula without the support cut; it depends on `y` only.
pub fn stephanov_profile(y: f64, mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let s = y * y - mu * mu;
    if s.abs() < SINGULAR_LINE_TOL {
        return Err(Error::SingularLine { y, mu });
    }
    Ok(((y * y + mu * mu) / (s * s) - 1.0) / (4.0 * PI))
}

fn modulus_term(r: f64) -> f64 {
    r * r + r * (r * r + 4.0).sqrt()
}

/// `(1/pi) (1/m - 1/(m + 4))` with `m = |lambda|^2 + |lambda| sqrt(|lambda|^2 + 4)`.
pub fn cauchy_product_density(lambda: Complex64) -> Result<f64> {
    let r = lambda.norm();
    if r == 0.0 {
        return Err(Error::InfiniteDensity);
    }
    let m = modulus_term(r);
    Ok((1.0 / m - 1.0 / (m + 4.0)) / PI)
}

/// Limiting complex part of `G` for the Cauchy product example.
pub fn cauchy_product_alpha(lambda: Complex64) -> Result<Complex64> {
    let r = lambda.norm();
    if r == 0.0 {
        return Err(Error::InfiniteDensity);
    }
    Ok(-2.0 * lambda.conj() / modulus_term(r))
}

/// Limiting hypercomplex part of `G~` for the Cauchy product example.
pub fn cauchy_product_beta_tilde(lambda: Complex64) -> f64 {
    let r = lambda.norm();
    0.5 * (-r + (r * r + 4.0).sqrt())
}

/// Density of `gamma = ln |lambda|`: `2 (e s - e^2) / (e s + e^2 + 4)` with `e = e^gamma`, `s = sqrt(e^2 + 4)`.
pub fn nu_gamma(gamma: f64) -> f64 {
    let e = gamma.exp();
    if e.is_infinite() {
        return 0.0;
    }
    let s = (e * e + 4.0).sqrt();
    // e s - e^2 = 4 e / (s + e), without the cancellation at large gamma.
    2.0 * (4.0 * e / (s + e)) / (e * s + e * e + 4.0)
}

/// Distribution function of `gamma = ln |lambda|`, `2 e^gamma / (e^gamma + sqrt(e^{2 gamma} + 4))`.
pub fn log_modulus_cdf(gamma: f64) -> f64 {
    let e = gamma.exp();
    if e.is_infinite() {
        return 1.0;
    }
    2.0 * e / (e + (e * e + 4.0).sqrt())
}

/// `1/(pi (1 + |lambda|^2)^2)`.
pub fn spherical_density(lambda: Complex64) -> f64 {
    1.0 / (PI * (1.0 + lambda.norm_sqr()).powi(2))
}

/// Distribution function of `|lambda|` under the spherical law, `r^2/(1 + r^2)`.
pub fn spherical_radial_cdf(r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if r.is_infinite() {
        return 1.0;
    }
    r * r / (1.0 + r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn elliptic_examples() {
        assert!((elliptic_density(c(0.0, 0.0), 0.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert_eq!(elliptic_density(c(1.5, 0.0), 0.0).unwrap(), 0.0);
        assert_eq!(elliptic_density(c(0.0, 1.5), 0.0).unwrap(), 0.0);
        assert!((elliptic_density(c(0.0, 0.0), 0.5).unwrap() - 0.424_413_181_578_387_6).abs() < 1e-12);
        assert!(elliptic_density(c(1.4, 0.0), 0.5).unwrap() > 0.0);
        assert_eq!(elliptic_density(c(0.0, 0.6), 0.5).unwrap(), 0.0);
        assert!(matches!(elliptic_density(c(0.0, 0.0), 1.0), Err(Error::DegenerateSupport(_))));
        assert!(matches!(elliptic_density(c(0.0, 0.0), 1.5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn elliptic_green_is_the_zero_family_fixed_point_at_eps_zero() {
        // g = -(lambda + tau alpha + beta j)^{-1} with eps = 0, written out in components.
        for (l, tau) in [(c(0.3, 0.1), 0.0), (c(-0.8, 0.2), 0.5), (c(0.1, -0.4), 0.3)] {
            let (alpha, beta) = elliptic_green(l, tau).unwrap();
            let p = l + tau * alpha;
            let n = p.norm_sqr() + beta * beta;
            assert!((alpha - (-p.conj() / n)).norm() < 1e-12);
            assert!((beta - beta / n).abs() < 1e-12);
        }
    }

    #[test]
    fn stephanov_examples() {
        let inside = stephanov_density(c(0.0, 0.5), 1.0).unwrap();
        assert!(inside.in_support);
        let expected = ((0.25 + 1.0) / 0.5625 - 1.0) / (4.0 * PI);
        assert!((inside.rho - expected).abs() < 1e-14);
        assert!((inside.rho - 0.09727).abs() < 1e-5);

        let outside = stephanov_density(c(0.0, 2.0), 1.0).unwrap();
        assert!(!outside.in_support);
        assert_eq!(outside.rho, 0.0);
        assert!((stephanov_support(c(0.0, 2.0), 1.0).unwrap() + 1.444_444_444_444_444).abs() < 1e-12);

        for l in [c(0.3, 0.4), c(0.1, 0.7), c(1.0, 0.2)] {
            let r = stephanov_density(l, 1.0).unwrap();
            assert_eq!(r, stephanov_density(c(-l.re, l.im), 1.0).unwrap());
            assert_eq!(r, stephanov_density(c(l.re, -l.im), 1.0).unwrap());
        }
        assert!(matches!(stephanov_density(c(0.2, 1.0), 1.0), Err(Error::SingularLine { .. })));
        assert!(matches!(stephanov_density(c(0.2, 0.5), 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn stephanov_half_width_matches_support_boundary() {
        for y in [0.45, 0.6, 0.75] {
            let w = stephanov_half_width(y, 1.0).unwrap();
            assert!(w > 0.0);
            assert!(stephanov_support(c(0.999 * w, y), 1.0).unwrap() > 0.0);
            assert!(stephanov_support(c(1.001 * w, y), 1.0).unwrap() < 0.0);
        }
        assert_eq!(stephanov_half_width(2.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn cauchy_product_examples() {
        let rho = cauchy_product_density(c(1.0, 0.0)).unwrap();
        // 4 / (pi r s (r + s)^2) with s = sqrt(r^2 + 4), the same expression after clearing denominators.
        let s = 5f64.sqrt();
        assert!((rho - 4.0 / (PI * s * (1.0 + s).powi(2))).abs() < 1e-15);
        assert!((rho - 0.054_374).abs() < 1e-6);
        assert!((nu_gamma(0.0) - 2.0 * (s - 1.0) / (s + 5.0)).abs() < 1e-15);
        assert!((nu_gamma(0.0) - 0.341_64).abs() < 1e-5);
        assert!(matches!(cauchy_product_density(c(0.0, 0.0)), Err(Error::InfiniteDensity)));
        assert!((cauchy_product_alpha(c(1.0, 0.0)).unwrap().re + 2.0 / (1.0 + s)).abs() < 1e-15);
        assert!((cauchy_product_beta_tilde(c(0.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_modulus_identities() {
        for k in -60..=60 {
            let g = k as f64 / 6.0;
            let e = g.exp();
            let via_rho = 2.0 * PI * e * e * cauchy_product_density(c(e, 0.0)).unwrap();
            assert!((nu_gamma(g) - via_rho).abs() < 1e-12, "gamma {g}");
            let h = 1e-5;
            let dcdf = (log_modulus_cdf(g + h) - log_modulus_cdf(g - h)) / (2.0 * h);
            assert!((dcdf - nu_gamma(g)).abs() < 1e-8);
        }
        let total = integrate(|g| Ok(nu_gamma(g)), -20.0, 20.0, 1e-10).unwrap();
        assert!((total - 1.0).abs() < 1e-6);
        assert!(nu_gamma(800.0) == 0.0 && nu_gamma(600.0) >= 0.0);
        assert_eq!(log_modulus_cdf(800.0), 1.0);
        assert_eq!(log_modulus_cdf(-800.0), 0.0);
    }

    #[test]
    fn spherical_examples() {
        assert!((spherical_density(c(0.0, 0.0)) - 1.0 / PI).abs() < 1e-15);
        // Radial mass 2 pi r rho(r) over r = tan(theta), dr = sec^2 theta dtheta.
        let total = integrate(
            |th: f64| {
                let r = th.tan();
                Ok(2.0 * PI * r * spherical_density(c(r, 0.0)) / th.cos().powi(2))
            },
            0.0,
            std::f64::consts::FRAC_PI_2,
            1e-12,
        )
        .unwrap();
        assert!((total - 1.0).abs() < 1e-10);
        assert_eq!(spherical_radial_cdf(1.0), 0.5);
        let h = 1e-6;
        for r in [0.3, 1.0, 2.5] {
            let d = (spherical_radial_cdf(r + h) - spherical_radial_cdf(r - h)) / (2.0 * h);
            assert!((d - 2.0 * PI * r * spherical_density(c(r, 0.0))).abs() < 1e-8);
        }
    }
}
