//! Verification experiments: Monte Carlo spectra against predicted densities, with reports.

mod figure1;
mod grid;
mod law_checks;
mod perturbation;
mod report;
mod self_averaging;
mod svg;
pub mod thresholds;

pub use figure1::{figure1_reproduction, run_figure1, EigenMethod, Figure1Config, Figure1Run};
pub use grid::{
    eigen_histogram, predict_grid, read_grid_csv, read_grid_from, write_failures_csv, write_grid_csv, write_grid_to,
    DensityGrid, GridSpec, Histogram, PredictedGrid,
};
pub use law_checks::{
    interior_cells, run_cauchy_product, run_elliptic, run_spherical, run_stephanov, stephanov_band_mass,
    CauchyProductConfig, EllipticConfig, SphericalConfig, StephanovConfig, STEPHANOV_PROBES,
};
pub use perturbation::{
    perturbation_check, perturbation_check_against, reference_grid, run_perturbation, BaseMatrix, PerturbationConfig,
    Reference,
};
pub use report::{
    ks_distance, parse_report, read_report, tv_distance, write_report, Check, ComparisonReport, Metrics, REPORT_VERSION,
};
pub use self_averaging::{
    probe_seed, run_self_averaging, self_averaging_probe, SelfAveraging, SelfAveragingConfig, SelfAveragingRow,
};
pub use svg::{heatmap_svg, histogram_svg, write_svg};
