//! Comparison metrics and the JSON verification report.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::grid::DensityGrid;

pub const REPORT_VERSION: u32 = 1;

/// `(1/2) sum |p - q| * area` over the shared window.
pub fn tv_distance(p: &DensityGrid, q: &DensityGrid) -> Result<f64> {
    if p.spec != q.spec || p.rho.len() != q.rho.len() {
        return Err(Error::GridMismatch);
    }
    let sum: f64 = p.rho.iter().zip(&q.rho).map(|(a, b)| (a - b).abs()).sum();
    Ok(0.5 * sum * p.spec.cell_area())
}

/// One-sample Kolmogorov-Smirnov distance `sup |F_n - F|`.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, x) in sorted.iter().enumerate() {
        let f = cdf(*x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// A thresholded metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub metric: String,
    pub value: f64,
    /// Inclusive lower bound.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min: Option<f64>,
    /// Exclusive upper bound.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub below: Option<f64>,
    pub passed: bool,
}

impl Check {
    pub fn below(metric: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { metric: metric.into(), value, min: None, below: Some(bound), passed: value < bound }
    }

    pub fn at_least(metric: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { metric: metric.into(), value, min: Some(bound), below: None, passed: value >= bound }
    }

    /// `lo <= value <= hi`.
    pub fn within(metric: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            metric: metric.into(),
            value,
            min: Some(lo),
            below: Some(hi),
            passed: value >= lo && value <= hi,
        }
    }

    pub fn holds(metric: impl Into<String>, ok: bool) -> Self {
        let value = if ok { 1.0 } else { 0.0 };
        Self { metric: metric.into(), value, min: Some(1.0), below: None, passed: ok }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "ok" } else { "FAILED" };
        match (self.min, self.below) {
            (Some(lo), Some(hi)) => write!(f, "{} = {:.6} (required in [{lo}, {hi}]) {verdict}", self.metric, self.value),
            (Some(lo), None) => write!(f, "{} = {:.6} (required >= {lo}) {verdict}", self.metric, self.value),
            (None, Some(hi)) => write!(f, "{} = {:.6} (required < {hi}) {verdict}", self.metric, self.value),
            (None, None) => write!(f, "{} = {:.6} {verdict}", self.metric, self.value),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Binned total variation distance.
    pub tv: Option<f64>,
    /// Kolmogorov-Smirnov distance on a radial or log-modulus marginal.
    pub ks: Option<f64>,
    /// Experiment-specific values.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub version: u32,
    pub experiment: String,
    pub metrics: Metrics,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub n_samples: usize,
    pub bins: usize,
    /// Echo of the run configuration.
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    pub runtime_ms: u64,
    pub metadata: BTreeMap<String, String>,
}

impl ComparisonReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            version: REPORT_VERSION,
            experiment: experiment.into(),
            metrics: Metrics::default(),
            checks: Vec::new(),
            passed: true,
            n_samples: 0,
            bins: 0,
            config: serde_json::Value::Null,
            seeds: Vec::new(),
            runtime_ms: 0,
            metadata: BTreeMap::new(),
        }
    }

    pub fn tv_distance(&self) -> Option<f64> {
        self.metrics.tv
    }

    pub fn ks_radial(&self) -> Option<f64> {
        self.metrics.ks
    }

    pub fn push_check(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn extra(&mut self, key: impl Into<String>, value: f64) {
        self.metrics.extra.insert(key.into(), value);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn write_report(path: &Path, report: &ComparisonReport) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ComparisonReport> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    parse_report(&text, path)
}

pub fn parse_report(text: &str, path: &Path) -> Result<ComparisonReport> {
    let parse = |e: serde_json::Error| Error::Parse { path: path.to_path_buf(), line: e.line() as u64, message: e.to_string() };
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse)?;
    let found = value.get("version").and_then(|v| v.as_u64()).ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        message: "missing integer `version` field".into(),
    })?;
    if found != REPORT_VERSION as u64 {
        return Err(Error::SchemaVersion { found: found as u32, expected: REPORT_VERSION });
    }
    serde_json::from_str(text).map_err(parse)
}
