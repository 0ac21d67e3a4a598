//! JSON config files, flag value parsers and shared flag groups.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use qgreen::ensembles::DeterministicFamily;
use qgreen::experiments::GridSpec;
use qgreen::laws::SolveConfig;

/// Loads `T` from a JSON file (or its default), rejecting keys that `T` does not know.
pub fn load<T: DeserializeOwned + Serialize + Default>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let raw: Value = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("{}: line {}: {e}", path.display(), e.line()))?;
    let value: T = serde_json::from_value(raw.clone()).with_context(|| format!("config {}", path.display()))?;
    let known = serde_json::to_value(&value)?;
    if let Some(key) = unknown_key(&raw, &known, "") {
        bail!("config {}: unknown field `{key}`", path.display());
    }
    Ok(value)
}

fn unknown_key(raw: &Value, known: &Value, prefix: &str) -> Option<String> {
    let (Value::Object(raw), Value::Object(known)) = (raw, known) else {
        return None;
    };
    for (k, v) in raw {
        let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match known.get(k) {
            None => return Some(path),
            Some(inner) => {
                if let Some(bad) = unknown_key(v, inner, &path) {
                    return Some(bad);
                }
            }
        }
    }
    None
}

/// `re,im` (or a bare real number).
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = parse_pair(s).or_else(|_| s.trim().parse::<f64>().map(|re| (re, 0.0)).map_err(|e| e.to_string()))?;
    Ok(Complex64::new(re, im))
}

/// `a,b` as two reals.
pub fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("`{b}`: {e}"))?;
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyKind {
    Zero,
    Identity,
    Stephanov,
    CauchyDiagonal,
    File,
}

/// Flags selecting a deterministic family `D_N`.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// Deterministic family D_N.
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Coupling of the stephanov family.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Seed of the cauchy-diagonal family.
    #[arg(long)]
    pub family_seed: Option<u64>,
    /// Matrix CSV (`row,col,re,im`) for the file family.
    #[arg(long)]
    pub family_file: Option<PathBuf>,
}

impl FamilyArgs {
    /// Applies the flags on top of `base`. A lone `--mu` or `--family-seed` adjusts the base family.
    pub fn apply(&self, base: DeterministicFamily) -> Result<DeterministicFamily> {
        let kind = match (self.family, &base) {
            (Some(k), _) => k,
            (None, DeterministicFamily::Zero) => FamilyKind::Zero,
            (None, DeterministicFamily::Identity) => FamilyKind::Identity,
            (None, DeterministicFamily::Stephanov { .. }) => FamilyKind::Stephanov,
            (None, DeterministicFamily::CauchyDiagonal { .. }) => FamilyKind::CauchyDiagonal,
            (None, DeterministicFamily::File { .. }) => FamilyKind::File,
        };
        let family = match kind {
            FamilyKind::Zero => DeterministicFamily::Zero,
            FamilyKind::Identity => DeterministicFamily::Identity,
            FamilyKind::Stephanov => {
                let base_mu = if let DeterministicFamily::Stephanov { mu } = base { mu } else { 1.0 };
                DeterministicFamily::Stephanov { mu: self.mu.unwrap_or(base_mu) }
            }
            FamilyKind::CauchyDiagonal => {
                let base_seed = if let DeterministicFamily::CauchyDiagonal { seed } = base { seed } else { 0 };
                DeterministicFamily::CauchyDiagonal { seed: self.family_seed.unwrap_or(base_seed) }
            }
            FamilyKind::File => match (&self.family_file, base) {
                (Some(path), _) => DeterministicFamily::File { path: path.clone() },
                (None, DeterministicFamily::File { path }) => DeterministicFamily::File { path },
                (None, _) => bail!("--family file needs --family-file"),
            },
        };
        if self.mu.is_some() && kind != FamilyKind::Stephanov {
            bail!("--mu applies only to the stephanov family");
        }
        if self.family_seed.is_some() && kind != FamilyKind::CauchyDiagonal {
            bail!("--family-seed applies only to the cauchy-diagonal family");
        }
        if self.family_file.is_some() && kind != FamilyKind::File {
            bail!("--family-file applies only to the file family");
        }
        family.validate()?;
        Ok(family)
    }
}

/// Flags overriding a grid window.
#[derive(Args, Debug, Clone, Default)]
pub struct GridArgs {
    /// Real range of the window as `min,max`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub re_range: Option<(f64, f64)>,
    /// Imaginary range of the window as `min,max`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub im_range: Option<(f64, f64)>,
    /// Cells along the real axis.
    #[arg(long)]
    pub nx: Option<usize>,
    /// Cells along the imaginary axis.
    #[arg(long)]
    pub ny: Option<usize>,
}

impl GridArgs {
    pub fn apply(&self, mut grid: GridSpec) -> Result<GridSpec> {
        if let Some((lo, hi)) = self.re_range {
            (grid.re_min, grid.re_max) = (lo, hi);
        }
        if let Some((lo, hi)) = self.im_range {
            (grid.im_min, grid.im_max) = (lo, hi);
        }
        grid.nx = self.nx.unwrap_or(grid.nx);
        grid.ny = self.ny.unwrap_or(grid.ny);
        grid.validate()?;
        Ok(grid)
    }
}

/// Flags overriding the continuation solver.
#[derive(Args, Debug, Clone, Default)]
pub struct SolverArgs {
    /// First continuation eps (default from the family's norm bound).
    #[arg(long)]
    pub eps_start: Option<f64>,
    /// Last continuation eps.
    #[arg(long)]
    pub eps_min: Option<f64>,
    /// Ratio between consecutive continuation steps.
    #[arg(long)]
    pub eps_factor: Option<f64>,
    /// Fixed-point tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Iteration cap per continuation step.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Relaxation weight of the fixed-point update (1 = plain iteration).
    #[arg(long)]
    pub relaxation: Option<f64>,
}

impl SolverArgs {
    pub fn apply(&self, mut cfg: SolveConfig) -> Result<SolveConfig> {
        cfg.eps_start = self.eps_start.unwrap_or(cfg.eps_start);
        cfg.eps_min = self.eps_min.unwrap_or(cfg.eps_min);
        cfg.eps_factor = self.eps_factor.unwrap_or(cfg.eps_factor);
        cfg.tol = self.tol.unwrap_or(cfg.tol);
        cfg.max_iter = self.max_iter.unwrap_or(cfg.max_iter);
        cfg.relaxation = self.relaxation.unwrap_or(cfg.relaxation);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Writes `value` as pretty JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_flags() {
        assert_eq!(parse_complex("1,-2.5").unwrap(), Complex64::new(1.0, -2.5));
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert!(parse_complex("1;2").is_err());
        assert!(parse_pair("a,1").is_err());
    }

    #[test]
    fn unknown_keys_are_found_at_depth() {
        let known = serde_json::json!({"n": 1, "grid": {"nx": 2}});
        assert_eq!(unknown_key(&serde_json::json!({"n": 3}), &known, ""), None);
        assert_eq!(unknown_key(&serde_json::json!({"grid": {"nz": 3}}), &known, ""), Some("grid.nz".into()));
    }

    #[test]
    fn family_flags_override_the_base() {
        let none = FamilyArgs::default();
        assert_eq!(none.apply(DeterministicFamily::Stephanov { mu: 2.0 }).unwrap(), DeterministicFamily::Stephanov { mu: 2.0 });
        let mu = FamilyArgs { mu: Some(0.5), ..FamilyArgs::default() };
        assert_eq!(mu.apply(DeterministicFamily::Stephanov { mu: 2.0 }).unwrap(), DeterministicFamily::Stephanov { mu: 0.5 });
        assert!(mu.apply(DeterministicFamily::Zero).is_err());
        let file = FamilyArgs { family: Some(FamilyKind::File), ..FamilyArgs::default() };
        assert!(file.apply(DeterministicFamily::Zero).is_err());
    }
}
