//! Pass/fail thresholds of the verification experiments.
//!
//! Each golden tolerance was frozen after a calibration run; the run is named next to it
//! and echoed into the report metadata as `calibration`.

/// KS distance on `ln |lambda|` for the Cauchy-diagonal product at `n >= 10000`.
/// Calibration: n = 10000, seed 3, Hessenberg sampler.
pub const FIGURE1_KS: f64 = 0.02;
/// Same for `1000 <= n < 10000`. Calibration: n = 1000, seeds 1..=5.
pub const FIGURE1_KS_SMALL: f64 = 0.06;

pub fn figure1_ks(n: usize) -> f64 {
    if n >= 10_000 {
        FIGURE1_KS
    } else {
        FIGURE1_KS_SMALL
    }
}

/// TV between perturbed eigenvalues and the cell-averaged `rho_eps` grid.
/// Calibration: N = 50, 200 trials, seed 11, X in {0, diag(+-1), Jordan}, eps in {0.5, 1}.
pub const PERTURBATION_TV: f64 = 0.07;
/// TV against a closed-form oracle (spherical law, normal smoothing).
pub const PERTURBATION_TV_ORACLE: f64 = 0.05;

/// Minimum fraction of eigenvalues with `(x/(1+tau))^2 + (y/(1-tau))^2 <= ELLIPTIC_RADIUS_SQR`.
pub const ELLIPTIC_INSIDE_FRACTION: f64 = 0.97;
pub const ELLIPTIC_RADIUS_SQR: f64 = 1.05;
/// Largest relative deviation of interior bins from `1/(pi (1 - tau^2))`.
/// Calibration: N = 2000, seeds 100..=103, tau in {0, 0.5}, Gaussian and phase-rademacher.
pub const ELLIPTIC_REL_DEV: f64 = 0.10;
/// Bins closer than this to the ellipse are excluded.
pub const ELLIPTIC_EDGE_MARGIN: f64 = 0.15;
/// TV of a single N = 2000 circular-law draw against the predicted grid.
pub const CIRCULAR_TV: f64 = 0.08;

/// Relative deviation of the Stephanov `|Im lambda|` marginal on interior bins.
/// Calibration: N = 2000, mu = 1, seed 3.
pub const STEPHANOV_REL_DEV: f64 = 0.15;

/// KS of `|lambda|` of pooled `A B^{-1}` spectra against `r^2/(1 + r^2)`.
pub const SPHERICAL_KS: f64 = 0.03;

/// Admissible least-squares slope of `ln var G` against `ln N`.
pub const SELF_AVERAGING_SLOPE: (f64, f64) = (-1.6, -0.6);

/// Relative deviation of the product-rule density from the Cauchy closed form.
pub const CAUCHY_PRODUCT_REL_DEV: f64 = 0.02;
