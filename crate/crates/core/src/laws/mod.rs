//! Sum and product rules, their eps-continuation, and the closed-form example densities.

pub mod closed;
pub mod solver;

pub use closed::{
    cauchy_product_alpha, cauchy_product_beta_tilde, cauchy_product_density, elliptic_density, elliptic_green,
    ellipse_radius_sqr, log_modulus_cdf, nu_gamma, spherical_density, spherical_radial_cdf, stephanov_density,
    stephanov_half_width, stephanov_profile, stephanov_support, StephanovDensity,
};
pub use solver::{
    default_eps_start, predict_density, predict_product_density, predict_sum_density, product_green, solve_product,
    solve_product_from, solve_sum, solve_sum_from, Continuation, DensityPrediction, Law, ProductMap, Rule,
    SolveConfig, SolveResult, SumMap,
};
