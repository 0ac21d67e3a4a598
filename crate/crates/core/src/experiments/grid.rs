//! Rectangular density grids in the complex plane and their CSV form.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::{predict_density, Law, SolveConfig};
use crate::linalg::io::{check_header, parse_error};

/// Window `[re_min, re_max] x [im_min, im_max]` split into `nx x ny` cells.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::square(3.0, 101)
    }
}

impl GridSpec {
    /// `[-half, half]^2` with `n x n` cells.
    pub fn square(half: f64, n: usize) -> Self {
        Self { re_min: -half, re_max: half, im_min: -half, im_max: half, nx: n, ny: n }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !(finite && self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(Error::InvalidArgument(format!("grid window must be finite and non-empty: {self:?}")));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidArgument("grid needs at least one cell per axis".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.re_max - self.re_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.im_max - self.im_min) / self.ny as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Flat index of cell `(ix, iy)`; `ix` runs fastest.
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn cell(&self, index: usize) -> (usize, usize) {
        (index % self.nx, index / self.nx)
    }

    pub fn center(&self, index: usize) -> Complex64 {
        let (ix, iy) = self.cell(index);
        Complex64::new(
            self.re_min + (ix as f64 + 0.5) * self.dx(),
            self.im_min + (iy as f64 + 0.5) * self.dy(),
        )
    }

    /// Cell containing `z`; the window is closed on the low side and open on the high side.
    pub fn locate(&self, z: Complex64) -> Option<usize> {
        let fx = (z.re - self.re_min) / self.dx();
        let fy = (z.im - self.im_min) / self.dy();
        if !(fx >= 0.0 && fy >= 0.0) {
            return None;
        }
        let (ix, iy) = (fx as usize, fy as usize);
        (ix < self.nx && iy < self.ny).then(|| self.index(ix, iy))
    }

    /// Midpoints of a `sub x sub` partition of cell `index`.
    pub fn sub_points(&self, index: usize, sub: usize) -> impl Iterator<Item = Complex64> + '_ {
        let (ix, iy) = self.cell(index);
        let (dx, dy) = (self.dx() / sub as f64, self.dy() / sub as f64);
        let x0 = self.re_min + ix as f64 * self.dx();
        let y0 = self.im_min + iy as f64 * self.dy();
        (0..sub * sub).map(move |k| {
            Complex64::new(x0 + ((k % sub) as f64 + 0.5) * dx, y0 + ((k / sub) as f64 + 0.5) * dy)
        })
    }
}

/// Density values (1/area units) and support flags on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub spec: GridSpec,
    pub rho: Vec<f64>,
    pub in_support: Vec<bool>,
}

impl DensityGrid {
    pub fn zeros(spec: GridSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self { spec, rho: vec![0.0; spec.len()], in_support: vec![false; spec.len()] })
    }

    /// Grid of `f` evaluated at cell centres; support is `rho > 0`.
    pub fn from_fn(spec: GridSpec, f: impl Fn(Complex64) -> Result<f64> + Sync) -> Result<Self> {
        Self::cell_averaged(spec, 1, f)
    }

    /// Grid of `f` averaged over the midpoints of a `sub x sub` partition of each cell.
    pub fn cell_averaged(spec: GridSpec, sub: usize, f: impl Fn(Complex64) -> Result<f64> + Sync) -> Result<Self> {
        spec.validate()?;
        if sub == 0 {
            return Err(Error::InvalidArgument("sub-cell count must be at least 1".into()));
        }
        let rho = (0..spec.len())
            .into_par_iter()
            .map(|k| {
                let mut acc = 0.0;
                for z in spec.sub_points(k, sub) {
                    acc += f(z)?;
                }
                Ok(acc / (sub * sub) as f64)
            })
            .collect::<Result<Vec<f64>>>()?;
        let in_support = rho.iter().map(|r| *r > 0.0).collect();
        let grid = Self { spec, rho, in_support };
        grid.check()?;
        Ok(grid)
    }

    /// Mass of cell `index`: `rho * area`.
    pub fn cell_mass(&self, index: usize) -> f64 {
        self.rho[index] * self.spec.cell_area()
    }

    pub fn total_mass(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.spec.cell_area()
    }

    /// Checks the shape and the `rho >= 0`, finite invariant.
    pub fn check(&self) -> Result<()> {
        self.spec.validate()?;
        if self.rho.len() != self.spec.len() || self.in_support.len() != self.spec.len() {
            return Err(Error::InvalidArgument(format!(
                "grid holds {} values for {} cells",
                self.rho.len(),
                self.spec.len()
            )));
        }
        if let Some((k, r)) = self.rho.iter().enumerate().find(|(_, r)| !(r.is_finite() && **r >= 0.0)) {
            return Err(Error::InvalidArgument(format!("cell {k} has density {r}")));
        }
        Ok(())
    }
}

/// A predicted grid together with the cells whose solve failed.
#[derive(Clone, Debug)]
pub struct PredictedGrid {
    pub grid: DensityGrid,
    /// Edge flags from the continuation (support decision uncertain).
    pub edge: Vec<bool>,
    /// `(cell index, error message)`; those cells hold `rho = 0`.
    pub failures: Vec<(usize, String)>,
}

impl PredictedGrid {
    pub fn failure_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.grid.spec.len()];
        for (k, _) in &self.failures {
            mask[*k] = true;
        }
        mask
    }
}

/// `predict_density` at every cell centre, in parallel. Failed cells are recorded, not fatal.
pub fn predict_grid(law: &Law<'_>, spec: GridSpec, cfg: &SolveConfig) -> Result<PredictedGrid> {
    spec.validate()?;
    cfg.validate()?;
    let results: Vec<_> = (0..spec.len())
        .into_par_iter()
        .map(|k| predict_density(law, spec.center(k), cfg))
        .collect();
    let mut grid = DensityGrid::zeros(spec)?;
    let mut edge = vec![false; spec.len()];
    let mut failures = Vec::new();
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok(p) => {
                grid.rho[k] = p.rho;
                grid.in_support[k] = p.in_support;
                edge[k] = p.edge;
            }
            Err(e) => failures.push((k, e.to_string())),
        }
    }
    Ok(PredictedGrid { grid, edge, failures })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub grid: DensityGrid,
    /// Fraction of samples outside the window.
    pub outside_fraction: f64,
    pub n_samples: usize,
}

/// Empirical density: counts / (samples * cell area). Its mass is the in-window fraction.
pub fn eigen_histogram(samples: &[Complex64], spec: GridSpec) -> Result<Histogram> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut grid = DensityGrid::zeros(spec)?;
    let mut counts = vec![0usize; spec.len()];
    let mut outside = 0usize;
    for z in samples {
        match spec.locate(*z) {
            Some(k) => counts[k] += 1,
            None => outside += 1,
        }
    }
    let norm = 1.0 / (samples.len() as f64 * spec.cell_area());
    for (k, c) in counts.into_iter().enumerate() {
        grid.rho[k] = c as f64 * norm;
        grid.in_support[k] = c > 0;
    }
    Ok(Histogram { grid, outside_fraction: outside as f64 / samples.len() as f64, n_samples: samples.len() })
}

const GRID_HEADER: [&str; 4] = ["re", "im", "rho", "in_support"];

#[derive(Serialize, Deserialize)]
struct GridRow {
    re: f64,
    im: f64,
    rho: f64,
    in_support: u8,
}

/// Writes `# <spec JSON>` followed by `re,im,rho,in_support` rows in cell order.
pub fn write_grid_csv(path: &Path, grid: &DensityGrid) -> Result<()> {
    write_grid_to(BufWriter::new(File::create(path)?), grid)
}

pub fn write_grid_to<W: Write>(mut writer: W, grid: &DensityGrid) -> Result<()> {
    grid.check()?;
    writeln!(writer, "# {}", serde_json::to_string(&grid.spec)?)?;
    let mut w = csv::Writer::from_writer(writer);
    for k in 0..grid.spec.len() {
        let z = grid.spec.center(k);
        w.serialize(GridRow { re: z.re, im: z.im, rho: grid.rho[k], in_support: grid.in_support[k] as u8 })
            .map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid_csv(path: &Path) -> Result<DensityGrid> {
    read_grid_from(File::open(path)?, path)
}

pub fn read_grid_from<R: Read>(reader: R, path: &Path) -> Result<DensityGrid> {
    let mut reader = BufReader::new(reader);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    let parse = |line: u64, message: String| Error::Parse { path: path.to_path_buf(), line, message };
    let spec: GridSpec = first
        .strip_prefix('#')
        .ok_or_else(|| parse(1, "expected a `# {grid spec}` line".into()))
        .and_then(|s| serde_json::from_str(s.trim()).map_err(|e| parse(1, format!("bad grid spec: {e}"))))?;
    spec.validate().map_err(|e| parse(1, e.to_string()))?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| shift(parse_error(path, &e)))?.clone();
    check_header(path, &headers, &GRID_HEADER).map_err(shift)?;
    let mut grid = DensityGrid::zeros(spec)?;
    let tol = 1e-9 * (spec.dx() + spec.dy());
    let mut rows = 0usize;
    for record in rdr.deserialize::<GridRow>() {
        let row = record.map_err(|e| shift(parse_error(path, &e)))?;
        let line = rows as u64 + 3;
        if rows >= spec.len() {
            return Err(parse(line, format!("more than nx * ny = {} rows", spec.len())));
        }
        let c = spec.center(rows);
        if (row.re - c.re).abs() > tol || (row.im - c.im).abs() > tol {
            return Err(parse(line, format!("row at ({}, {}) does not match cell centre {c}", row.re, row.im)));
        }
        if !(row.rho.is_finite() && row.rho >= 0.0) || row.in_support > 1 {
            return Err(parse(line, format!("invalid values rho = {}, in_support = {}", row.rho, row.in_support)));
        }
        grid.rho[rows] = row.rho;
        grid.in_support[rows] = row.in_support == 1;
        rows += 1;
    }
    if rows != spec.len() {
        return Err(parse(rows as u64 + 2, format!("expected nx * ny = {} rows, found {rows}", spec.len())));
    }
    Ok(grid)
}

/// CSV line numbers count from the header; the spec line comes first.
fn shift(err: Error) -> Error {
    match err {
        Error::Parse { path, line, message } => Error::Parse { path, line: line + 1, message },
        other => other,
    }
}

/// Sidecar listing failed cells as `re,im,error`.
pub fn write_failures_csv(path: &Path, predicted: &PredictedGrid) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(std::io::Error::from)?;
    w.write_record(["re", "im", "error"]).map_err(std::io::Error::from)?;
    for (k, msg) in &predicted.failures {
        let z = predicted.grid.spec.center(*k);
        w.write_record([z.re.to_string(), z.im.to_string(), msg.clone()])
            .map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}
