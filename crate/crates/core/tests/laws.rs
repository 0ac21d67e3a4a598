use std::f64::consts::PI;

use num_complex::Complex64;

use qgreen::ensembles::{family_green_evaluators, Atoms, CauchyLimit, DeterministicFamily, NegInverse};
use qgreen::experiments::{
    predict_grid, read_grid_csv, run_perturbation, run_spherical, write_grid_csv, GridSpec, PerturbationConfig,
    SphericalConfig,
};
use qgreen::laws::{
    cauchy_product_density, elliptic_density, predict_density, stephanov_density, stephanov_support, Law, SolveConfig,
};

fn ellipse_distance(z: Complex64, tau: f64) -> f64 {
    (0..4000)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 4000.0;
            (Complex64::new((1.0 + tau) * t.cos(), (1.0 - tau) * t.sin()) - z).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn sum_rule_grid_matches_the_elliptic_law() {
    let spec = GridSpec::square(1.6, 21);
    for tau in [0.0, 0.3, 0.5] {
        let law = Law::sum(&NegInverse, tau);
        let predicted = predict_grid(&law, spec, &SolveConfig::default()).unwrap();
        assert!(predicted.failures.is_empty(), "{:?}", predicted.failures);
        let mut checked = 0;
        for k in 0..spec.len() {
            let z = spec.center(k);
            if ellipse_distance(z, tau) < 0.1 {
                continue;
            }
            let exact = elliptic_density(z, tau).unwrap();
            assert!((predicted.grid.rho[k] - exact).abs() < 0.01, "tau {tau} at {z}: {} vs {exact}", predicted.grid.rho[k]);
            assert_eq!(predicted.grid.in_support[k], exact > 0.0, "tau {tau} at {z}");
            checked += 1;
        }
        assert!(checked > 300);
    }
}

#[test]
fn sum_rule_matches_the_stephanov_closed_form() {
    let evals = family_green_evaluators(&DeterministicFamily::Stephanov { mu: 1.0 }).unwrap();
    let law = Law::sum(evals.direct.as_ref(), 1.0);
    let cfg = SolveConfig::for_bound(evals.norm_bound);
    for (x, y) in [(0.0, 0.45), (0.2, 0.6), (-0.3, -0.7), (0.0, 0.75), (0.4, 0.5)] {
        let z = Complex64::new(x, y);
        let s = stephanov_support(z, 1.0).unwrap();
        let p = predict_density(&law, z, &cfg).unwrap();
        let exact = stephanov_density(z, 1.0).unwrap();
        assert_eq!(p.in_support, exact.in_support, "{z}: S = {s}");
        if s > 0.05 {
            assert!((p.rho - exact.rho).abs() < 0.02 * exact.rho.max(0.1), "{z}: {} vs {}", p.rho, exact.rho);
        }
    }
}

#[test]
fn identity_family_shifts_the_circular_law() {
    let one = Atoms::uniform("identity", vec![Complex64::new(1.0, 0.0)]).unwrap();
    let cfg = SolveConfig::for_bound(qgreen::ensembles::NormBound::Bounded(1.0));
    for z in [Complex64::new(1.2, 0.3), Complex64::new(0.5, -0.5), Complex64::new(2.5, 0.0)] {
        let shifted = predict_density(&Law::sum(&one, 0.0), z, &cfg).unwrap();
        let exact = elliptic_density(z - 1.0, 0.0).unwrap();
        assert!((shifted.rho - exact).abs() < 0.01, "{z}: {} vs {exact}", shifted.rho);
    }
}

#[test]
fn product_rule_is_rotation_invariant_for_the_cauchy_limit() {
    let law = Law::product(&CauchyLimit, &CauchyLimit, 0.0);
    let cfg = SolveConfig::default();
    for r in [0.3, 1.0, 2.2] {
        let exact = cauchy_product_density(Complex64::new(r, 0.0)).unwrap();
        for k in 0..6 {
            let p = predict_density(&law, Complex64::from_polar(r, k as f64), &cfg).unwrap();
            assert!(p.in_support);
            assert!((p.rho / exact - 1.0).abs() < 0.02, "r {r} angle {k}: {} vs {exact}", p.rho);
        }
    }
}

#[test]
fn predicted_grid_survives_a_file_round_trip() {
    let spec = GridSpec { re_min: -1.5, re_max: 1.5, im_min: -1.0, im_max: 1.0, nx: 12, ny: 8 };
    let predicted = predict_grid(&Law::sum(&NegInverse, 0.4), spec, &SolveConfig::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    write_grid_csv(&path, &predicted.grid).unwrap();
    let back = read_grid_csv(&path).unwrap();
    assert_eq!(back.spec, spec);
    assert_eq!(back.in_support, predicted.grid.in_support);
    for (a, b) in back.rho.iter().zip(&predicted.grid.rho) {
        assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0));
    }
}

#[test]
fn experiments_are_deterministic_given_config_and_seed() {
    let cfg = PerturbationConfig { n: 12, trials: 20, ..PerturbationConfig::default() };
    let (a, b) = (run_perturbation(&cfg).unwrap(), run_perturbation(&cfg).unwrap());
    assert_eq!(a.metrics, b.metrics);
    assert_eq!(a.config, b.config);
    let other = run_perturbation(&PerturbationConfig { seed: cfg.seed + 1, ..cfg }).unwrap();
    assert_ne!(a.metrics.tv, other.metrics.tv);

    let s = SphericalConfig { n: 20, draws: 5, seed: 9 };
    assert_eq!(run_spherical(&s).unwrap().metrics, run_spherical(&s).unwrap().metrics);
}
