//! Subcommand implementations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qgreen::ensembles::{
    cauchy_diagonal, family_green_evaluators, operator_matrix, product_eigenvalues, sample_random, sample_ratio,
    DeterministicFamily, EnsembleSpec, EntryDistribution,
};
use qgreen::experiments::{
    heatmap_svg, histogram_svg, predict_grid, run_cauchy_product, run_elliptic, run_figure1, run_perturbation,
    run_self_averaging, run_spherical, run_stephanov, write_failures_csv, write_grid_csv, write_report, write_svg,
    BaseMatrix, CauchyProductConfig, ComparisonReport, EigenMethod, EllipticConfig, Figure1Config, GridSpec,
    PerturbationConfig, Reference, SelfAveragingConfig, SphericalConfig, StephanovConfig,
};
use qgreen::greens::{green, rho_eps};
use qgreen::laws::{nu_gamma, Law, Rule, SolveConfig};
use qgreen::linalg::io::{read_matrix_csv, write_complex_csv, write_matrix_csv};
use qgreen::linalg::{eigenvalues, ComplexMatrix};
use qgreen::Quaternion;

use crate::config::{load, parse_complex, write_json, FamilyArgs, GridArgs, SolverArgs};

/// Exit status of a run whose numerics failed part-way.
pub const EXIT_NUMERICAL: u8 = 3;

fn resolve(out_dir: &Path, explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| out_dir.join(default_name))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum SampleMode {
    /// `A_N` alone.
    #[default]
    #[serde(rename = "a")]
    #[value(name = "a")]
    A,
    /// `D_N + A_N`.
    #[serde(rename = "d+a")]
    #[value(name = "d+a")]
    Sum,
    /// `D_N A_N`.
    #[serde(rename = "d*a")]
    #[value(name = "d*a")]
    Product,
    /// `A B^{-1}` with independent Gaussian `A`, `B`.
    #[serde(rename = "ratio")]
    #[value(name = "ratio")]
    Ratio,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleConfig {
    pub mode: SampleMode,
    pub n: usize,
    pub tau: f64,
    pub distribution: EntryDistribution,
    pub seed: u64,
    pub family: DeterministicFamily,
    pub output: Option<PathBuf>,
    pub matrix_output: Option<PathBuf>,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            mode: SampleMode::A,
            n: 500,
            tau: 0.0,
            distribution: EntryDistribution::ComplexGaussian,
            seed: 0,
            family: DeterministicFamily::Zero,
            output: None,
            matrix_output: None,
        }
    }
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// JSON config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Which matrix to sample.
    #[arg(long, value_enum)]
    mode: Option<SampleMode>,
    /// Matrix size N.
    #[arg(long)]
    n: Option<usize>,
    /// Covariance E xi_ij xi_ji of the random part (complex-gaussian only when nonzero).
    #[arg(long)]
    tau: Option<f64>,
    /// Entry distribution: complex-gaussian, phase-rademacher or uniform-disc.
    #[arg(long)]
    dist: Option<EntryDistribution>,
    /// Seed of the random part.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Eigenvalue CSV (`re,im`); defaults to `<out-dir>/sample_<mode>.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sampled matrix as `row,col,re,im`.
    #[arg(long)]
    matrix_out: Option<PathBuf>,
}

impl SampleArgs {
    fn config(&self) -> Result<SampleConfig> {
        let mut cfg: SampleConfig = load(self.config.as_deref())?;
        cfg.mode = self.mode.unwrap_or(cfg.mode);
        cfg.n = self.n.unwrap_or(cfg.n);
        cfg.tau = self.tau.unwrap_or(cfg.tau);
        cfg.distribution = self.dist.unwrap_or(cfg.distribution);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.family = self.family.apply(cfg.family)?;
        cfg.output = self.out.clone().or(cfg.output);
        cfg.matrix_output = self.matrix_out.clone().or(cfg.matrix_output);
        EnsembleSpec { n: cfg.n, tau: cfg.tau, distribution: cfg.distribution, seed: cfg.seed }.validate()?;
        let uses_family = matches!(cfg.mode, SampleMode::Sum | SampleMode::Product);
        if !uses_family && cfg.family != DeterministicFamily::Zero {
            bail!("mode {:?} takes no deterministic family", cfg.mode);
        }
        if cfg.mode == SampleMode::Ratio && (cfg.tau != 0.0 || cfg.distribution != EntryDistribution::ComplexGaussian) {
            bail!("ratio mode draws complex-gaussian A and B with tau = 0");
        }
        Ok(cfg)
    }
}

pub fn sample(args: &SampleArgs, out_dir: &Path) -> Result<ExitCode> {
    let cfg = args.config()?;
    let spec = EnsembleSpec { n: cfg.n, tau: cfg.tau, distribution: cfg.distribution, seed: cfg.seed };
    let mode_name = match cfg.mode {
        SampleMode::A => "a",
        SampleMode::Sum => "sum",
        SampleMode::Product => "product",
        SampleMode::Ratio => "ratio",
    };
    let cauchy_fast_path = cfg.mode == SampleMode::Product
        && cfg.matrix_output.is_none()
        && cfg.distribution == EntryDistribution::ComplexGaussian
        && cfg.tau == 0.0;
    let (eigs, matrix): (Vec<Complex64>, Option<ComplexMatrix>) = match (&cfg.family, cauchy_fast_path) {
        (DeterministicFamily::CauchyDiagonal { seed }, true) => {
            // Equal-in-law Hessenberg form of D A; the dense product is never formed.
            (product_eigenvalues(&cauchy_diagonal(cfg.n, *seed), cfg.seed)?, None)
        }
        _ => {
            let x = match cfg.mode {
                SampleMode::A => sample_random(&spec)?,
                SampleMode::Sum => operator_matrix(&cfg.family, cfg.n)?.add(&sample_random(&spec)?)?,
                SampleMode::Product => operator_matrix(&cfg.family, cfg.n)?.matmul(&sample_random(&spec)?)?,
                SampleMode::Ratio => sample_ratio(cfg.n, cfg.seed)?,
            };
            (eigenvalues(&x)?, Some(x))
        }
    };
    let out = resolve(out_dir, cfg.output.clone(), &format!("sample_{mode_name}.csv"));
    write_complex_csv(&out, &eigs)?;
    println!("wrote {} eigenvalues to {}", eigs.len(), out.display());
    if let (Some(path), Some(x)) = (&cfg.matrix_output, &matrix) {
        write_matrix_csv(path, x)?;
        println!("wrote matrix to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PredictConfig {
    pub rule: Rule,
    pub family: DeterministicFamily,
    pub tau: f64,
    pub grid: GridSpec,
    /// Solver settings; defaults follow the family's norm bound.
    pub solver: Option<SolveConfig>,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl Default for PredictConfig {
    fn default() -> Self {
        Self {
            rule: Rule::Sum,
            family: DeterministicFamily::Zero,
            tau: 0.0,
            grid: GridSpec::default(),
            solver: None,
            output: None,
            svg: None,
        }
    }
}

#[derive(Args, Debug)]
pub struct PredictArgs {
    /// JSON config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Self-consistency law: sum (D + A) or product (D A).
    #[arg(long)]
    rule: Option<Rule>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Covariance of the random part, |tau| <= 1.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    solver: SolverArgs,
    /// Grid CSV; defaults to `<out-dir>/predict_<rule>_<family>.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Heatmap of the predicted density.
    #[arg(long)]
    svg: Option<PathBuf>,
}

pub fn predict(args: &PredictArgs, out_dir: &Path) -> Result<ExitCode> {
    let mut cfg: PredictConfig = load(args.config.as_deref())?;
    cfg.rule = args.rule.unwrap_or(cfg.rule);
    cfg.family = args.family.apply(cfg.family)?;
    cfg.tau = args.tau.unwrap_or(cfg.tau);
    cfg.grid = args.grid.apply(cfg.grid)?;
    cfg.output = args.out.clone().or(cfg.output);
    cfg.svg = args.svg.clone().or(cfg.svg);

    let evals = family_green_evaluators(&cfg.family)?;
    let solve = args.solver.apply(cfg.solver.unwrap_or_else(|| SolveConfig::for_bound(evals.norm_bound)))?;
    cfg.solver = Some(solve);
    let law = match cfg.rule {
        Rule::Sum => Law::sum(evals.direct.as_ref(), cfg.tau),
        Rule::Product => Law::product(evals.direct.as_ref(), evals.inverse()?, cfg.tau),
    };
    law.validate()?;

    let predicted = predict_grid(&law, cfg.grid, &solve)?;
    let out = resolve(out_dir, cfg.output.clone(), &format!("predict_{}_{}.csv", cfg.rule.as_str(), cfg.family.name()));
    write_grid_csv(&out, &predicted.grid)?;
    let inside = predicted.grid.in_support.iter().filter(|b| **b).count();
    let edge = predicted.edge.iter().filter(|b| **b).count();
    println!(
        "wrote {} cells to {} ({inside} in support, {edge} near the edge, window mass {:.6})",
        predicted.grid.spec.len(),
        out.display(),
        predicted.grid.total_mass()
    );
    if let Some(path) = &cfg.svg {
        let title = format!("{} rule, {} family, tau = {}", cfg.rule.as_str(), cfg.family.name(), cfg.tau);
        write_svg(path, &heatmap_svg(&predicted.grid, &title)?)?;
        println!("wrote heatmap to {}", path.display());
    }
    if !predicted.failures.is_empty() {
        let sidecar = out.with_extension("failures.csv");
        write_failures_csv(&sidecar, &predicted)?;
        eprintln!(
            "solver failed on {} of {} cells (rho = 0 there); failure mask written to {}",
            predicted.failures.len(),
            predicted.grid.spec.len(),
            sidecar.display()
        );
        return Ok(ExitCode::from(EXIT_NUMERICAL));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// JSON config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report JSON; defaults to `<out-dir>/<experiment>.json`.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Spectra of X + eps A B^{-1} against rho_eps(.; X).
    Perturbation {
        #[command(flatten)]
        common: ReportArgs,
        /// Unperturbed matrix: zero, alternating-diagonal or jordan.
        #[arg(long, value_enum)]
        matrix: Option<BaseKind>,
        /// Matrix CSV to use as X instead of a built-in one.
        #[arg(long, conflicts_with = "matrix")]
        matrix_file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Reference density: rho-eps, spherical (X = 0) or normal-smoothing (diagonal X).
        #[arg(long, value_enum)]
        reference: Option<ReferenceKind>,
        #[command(flatten)]
        grid: GridArgs,
        /// Sub-cells per axis averaged into each predicted cell.
        #[arg(long)]
        sub: Option<usize>,
    },
    /// Variance decay of G(lambda + eps j; A_N) with N.
    SelfAveraging {
        #[command(flatten)]
        common: ReportArgs,
        /// Matrix sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        dist: Option<EntryDistribution>,
        /// Spectral point as `re,im`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Option<Complex64>,
        /// Regularization eps (> 1).
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Log-modulus distribution of diag(Cauchy) A against the product-rule law.
    Figure1 {
        #[command(flatten)]
        common: ReportArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Eigenvalue route: hessenberg or dense.
        #[arg(long)]
        method: Option<EigenMethod>,
        /// Histogram bins of the SVG plot.
        #[arg(long)]
        bins: Option<usize>,
        /// Histogram of ln|lambda| with the predicted density overlaid.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Elliptic law of a single draw.
    Elliptic {
        #[command(flatten)]
        common: ReportArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        dist: Option<EntryDistribution>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// |Im lambda| marginal and support of GUE + i M_N.
    Stephanov {
        #[command(flatten)]
        common: ReportArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Bin edges on |Im lambda|, comma separated.
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<f64>>,
    },
    /// Product-rule solver with Cauchy-limit evaluators against the closed form.
    CauchyProduct {
        #[command(flatten)]
        common: ReportArgs,
        /// Radii of the probe points, comma separated.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// |lambda| of pooled A B^{-1} spectra against r^2/(1 + r^2).
    Spherical {
        #[command(flatten)]
        common: ReportArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        draws: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseKind {
    Zero,
    AlternatingDiagonal,
    Jordan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReferenceKind {
    RhoEps,
    Spherical,
    NormalSmoothing,
}

fn set<T>(field: &mut T, flag: &Option<T>)
where
    T: Clone,
{
    if let Some(v) = flag {
        *field = v.clone();
    }
}

fn finish(report: &ComparisonReport, common: &ReportArgs, out_dir: &Path) -> Result<ExitCode> {
    let path = resolve(out_dir, common.report.clone(), &format!("{}.json", report.experiment));
    write_report(&path, report)?;
    for check in &report.checks {
        let bound = match (check.min, check.below) {
            (Some(lo), Some(hi)) => format!("in [{lo}, {hi})"),
            (Some(lo), None) => format!(">= {lo}"),
            (None, Some(hi)) => format!("< {hi}"),
            (None, None) => String::new(),
        };
        println!("{} {} = {} {bound}", if check.passed { "PASS" } else { "FAIL" }, check.metric, check.value);
    }
    println!("report written to {}", path.display());
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        let failed: Vec<&str> = report.failed_checks().map(|c| c.metric.as_str()).collect();
        eprintln!("{}: threshold breached for {}", report.experiment, failed.join(", "));
        Ok(ExitCode::from(1))
    }
}

pub fn verify(cmd: &VerifyCommand, out_dir: &Path) -> Result<ExitCode> {
    match cmd {
        VerifyCommand::Perturbation { common, matrix, matrix_file, n, eps, trials, seed, reference, grid, sub } => {
            let mut cfg: PerturbationConfig = load(common.config.as_deref())?;
            if let Some(kind) = matrix {
                cfg.matrix = match kind {
                    BaseKind::Zero => BaseMatrix::Zero,
                    BaseKind::AlternatingDiagonal => BaseMatrix::AlternatingDiagonal,
                    BaseKind::Jordan => BaseMatrix::Jordan,
                };
            }
            if let Some(path) = matrix_file {
                cfg.matrix = BaseMatrix::File { path: path.clone() };
                if n.is_none() {
                    cfg.n = read_matrix_csv(path)?.n();
                }
            }
            set(&mut cfg.n, n);
            set(&mut cfg.eps, eps);
            set(&mut cfg.trials, trials);
            set(&mut cfg.seed, seed);
            if let Some(r) = reference {
                cfg.reference = match r {
                    ReferenceKind::RhoEps => Reference::RhoEps,
                    ReferenceKind::Spherical => Reference::Spherical,
                    ReferenceKind::NormalSmoothing => Reference::NormalSmoothing,
                };
            }
            cfg.grid = grid.apply(cfg.grid)?;
            set(&mut cfg.sub, sub);
            finish(&run_perturbation(&cfg)?, common, out_dir)
        }
        VerifyCommand::SelfAveraging { common, sizes, reps, tau, dist, lambda, eps, seed } => {
            let mut cfg: SelfAveragingConfig = load(common.config.as_deref())?;
            set(&mut cfg.sizes, sizes);
            set(&mut cfg.reps, reps);
            set(&mut cfg.tau, tau);
            set(&mut cfg.distribution, dist);
            set(&mut cfg.lambda, lambda);
            set(&mut cfg.eps, eps);
            set(&mut cfg.seed, seed);
            let (report, probe) = run_self_averaging(&cfg)?;
            for row in &probe.rows {
                println!("N = {:>5}: var = {:.4e} +- {:.1e}", row.n, row.variance, row.variance_se);
            }
            println!("slope = {:.4}", probe.slope);
            finish(&report, common, out_dir)
        }
        VerifyCommand::Figure1 { common, n, seed, method, bins, svg } => {
            let mut cfg: Figure1Config = load(common.config.as_deref())?;
            set(&mut cfg.n, n);
            set(&mut cfg.seed, seed);
            set(&mut cfg.method, method);
            set(&mut cfg.bins, bins);
            let run = run_figure1(&cfg)?;
            if let Some(path) = svg {
                let title = format!("ln|lambda| of diag(Cauchy) A, n = {}", cfg.n);
                write_svg(path, &histogram_svg(&run.log_moduli, -6.0, 6.0, cfg.bins, nu_gamma, &title)?)?;
                println!("wrote histogram to {}", path.display());
            }
            finish(&run.report, common, out_dir)
        }
        VerifyCommand::Elliptic { common, n, tau, dist, seed } => {
            let mut cfg: EllipticConfig = load(common.config.as_deref())?;
            set(&mut cfg.n, n);
            set(&mut cfg.tau, tau);
            set(&mut cfg.distribution, dist);
            set(&mut cfg.seed, seed);
            finish(&run_elliptic(&cfg)?, common, out_dir)
        }
        VerifyCommand::Stephanov { common, n, mu, seed, edges } => {
            let mut cfg: StephanovConfig = load(common.config.as_deref())?;
            set(&mut cfg.n, n);
            set(&mut cfg.mu, mu);
            set(&mut cfg.seed, seed);
            set(&mut cfg.edges, edges);
            finish(&run_stephanov(&cfg)?, common, out_dir)
        }
        VerifyCommand::CauchyProduct { common, radii, solver } => {
            let mut cfg: CauchyProductConfig = load(common.config.as_deref())?;
            set(&mut cfg.radii, radii);
            cfg.solve = solver.apply(cfg.solve)?;
            finish(&run_cauchy_product(&cfg)?, common, out_dir)
        }
        VerifyCommand::Spherical { common, n, draws, seed } => {
            let mut cfg: SphericalConfig = load(common.config.as_deref())?;
            set(&mut cfg.n, n);
            set(&mut cfg.draws, draws);
            set(&mut cfg.seed, seed);
            finish(&run_spherical(&cfg)?, common, out_dir)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GreenConfig {
    pub family: DeterministicFamily,
    /// Matrix CSV; takes precedence over `family`.
    pub matrix: Option<PathBuf>,
    pub n: usize,
    pub lambda: Complex64,
    pub eps: f64,
    /// Central-difference step of rho_eps; default `1e-5 max(1, |lambda|)`.
    pub h: Option<f64>,
}

impl Default for GreenConfig {
    fn default() -> Self {
        Self {
            family: DeterministicFamily::Zero,
            matrix: None,
            n: 10,
            lambda: Complex64::new(0.0, 0.0),
            eps: 1.0,
            h: None,
        }
    }
}

#[derive(Args, Debug)]
pub struct GreenArgs {
    /// JSON config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Matrix CSV (`row,col,re,im`) instead of a family.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Size of the family matrix.
    #[arg(long)]
    n: Option<usize>,
    /// Spectral point as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    lambda: Option<Complex64>,
    /// Regularization eps > 0.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    /// Central-difference step for rho_eps.
    #[arg(long)]
    h: Option<f64>,
    /// Print one JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct GreenOutput {
    config: GreenConfig,
    n: usize,
    g: Quaternion,
    norm: f64,
    bound: f64,
    rho_eps: f64,
}

pub fn green_cmd(args: &GreenArgs) -> Result<ExitCode> {
    let mut cfg: GreenConfig = load(args.config.as_deref())?;
    cfg.family = args.family.apply(cfg.family)?;
    cfg.matrix = args.matrix.clone().or(cfg.matrix);
    set(&mut cfg.n, &args.n);
    set(&mut cfg.lambda, &args.lambda);
    set(&mut cfg.eps, &args.eps);
    cfg.h = args.h.or(cfg.h);
    if !(cfg.eps > 0.0 && cfg.eps.is_finite()) {
        bail!("eps must be positive, got {}", cfg.eps);
    }
    let x = match &cfg.matrix {
        Some(path) => read_matrix_csv(path)?,
        None => operator_matrix(&cfg.family, cfg.n)?,
    };
    let g = green(&x, Quaternion::spectral(cfg.lambda, cfg.eps))?;
    let rho = rho_eps(&x, cfg.lambda, cfg.eps, cfg.h).context("rho_eps")?;
    let out = GreenOutput { n: x.n(), g, norm: g.norm(), bound: 1.0 / cfg.eps, rho_eps: rho, config: cfg };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("G = {}", out.g);
        println!("|G| = {} (bound 1/eps = {})", out.norm, out.bound);
        println!("rho_eps = {}", out.rho_eps);
    }
    Ok(ExitCode::SUCCESS)
}

/// Writes the default config of every command into `dir`, as templates.
pub fn write_templates(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_json(&dir.join("sample.json"), &SampleConfig::default())?;
    write_json(&dir.join("predict.json"), &PredictConfig::default())?;
    write_json(&dir.join("green.json"), &GreenConfig::default())?;
    write_json(&dir.join("perturbation.json"), &PerturbationConfig::default())?;
    write_json(&dir.join("self-averaging.json"), &SelfAveragingConfig::default())?;
    write_json(&dir.join("figure1.json"), &Figure1Config::default())?;
    write_json(&dir.join("elliptic.json"), &EllipticConfig::default())?;
    write_json(&dir.join("stephanov.json"), &StephanovConfig::default())?;
    write_json(&dir.join("cauchy-product.json"), &CauchyProductConfig::default())?;
    write_json(&dir.join("spherical.json"), &SphericalConfig::default())?;
    Ok(())
}
