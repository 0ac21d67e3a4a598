use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::io::read_matrix_csv;
use crate::linalg::{spectral_norm, ComplexMatrix};
use crate::rng::{rng, standard_cauchy};

/// Deterministic matrix families `D_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DeterministicFamily {
    Zero,
    Identity,
    /// `M_N = I_{N/2} (x) [[0, mu], [mu, 0]]`; the evaluators describe `i M_N`.
    Stephanov { mu: f64 },
    /// Diagonal of i.i.d. standard Cauchy reals.
    CauchyDiagonal { seed: u64 },
    /// Matrix read from a `row,col,re,im` CSV file.
    File { path: PathBuf },
}

/// Uniform bound `d` on `max(|D_N|, |D_N^{-1}|)`, when one exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormBound {
    Bounded(f64),
    Unbounded,
}

impl NormBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            NormBound::Bounded(d) => Some(*d),
            NormBound::Unbounded => None,
        }
    }
}

impl DeterministicFamily {
    pub fn name(&self) -> &'static str {
        match self {
            DeterministicFamily::Zero => "zero",
            DeterministicFamily::Identity => "identity",
            DeterministicFamily::Stephanov { .. } => "stephanov",
            DeterministicFamily::CauchyDiagonal { .. } => "cauchy-diagonal",
            DeterministicFamily::File { .. } => "file",
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let DeterministicFamily::Stephanov { mu } = self {
            if !(*mu > 0.0 && mu.is_finite()) {
                return Err(Error::InvalidArgument(format!("mu must be positive, got {mu}")));
            }
        }
        Ok(())
    }

    pub fn norm_bound(&self) -> Result<NormBound> {
        self.validate()?;
        Ok(match self {
            DeterministicFamily::Zero => NormBound::Bounded(0.0),
            DeterministicFamily::Identity => NormBound::Bounded(1.0),
            DeterministicFamily::Stephanov { mu } => NormBound::Bounded(mu.max(1.0 / mu)),
            DeterministicFamily::CauchyDiagonal { .. } => NormBound::Unbounded,
            DeterministicFamily::File { path } => {
                let d = read_matrix_csv(path)?;
                let norm = spectral_norm(&d)?;
                let inv_norm = match d.inverse() {
                    Ok(inv) => spectral_norm(&inv)?,
                    Err(_) => 0.0,
                };
                NormBound::Bounded(norm.max(inv_norm))
            }
        })
    }
}

/// The matrix `D_N` of a family.
pub fn make_deterministic(family: &DeterministicFamily, n: usize) -> Result<ComplexMatrix> {
    family.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    match family {
        DeterministicFamily::Zero => Ok(ComplexMatrix::zeros(n)),
        DeterministicFamily::Identity => Ok(ComplexMatrix::identity(n)),
        DeterministicFamily::Stephanov { mu } => {
            if n % 2 != 0 {
                return Err(Error::InvalidArgument(format!("stephanov family needs even n, got {n}")));
            }
            ComplexMatrix::from_fn(n, |i, j| {
                if i / 2 == j / 2 && i != j {
                    Complex64::new(*mu, 0.0)
                } else {
                    zero
                }
            })
        }
        DeterministicFamily::CauchyDiagonal { seed } => ComplexMatrix::from_diagonal(&cauchy_diagonal(n, *seed)),
        DeterministicFamily::File { path } => {
            let m = read_matrix_csv(path)?;
            if m.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} holds a {}x{} matrix, requested n = {n}",
                    path.display(),
                    m.n(),
                    m.n()
                )));
            }
            Ok(m)
        }
    }
}

/// Diagonal of the Cauchy family without forming the matrix.
pub fn cauchy_diagonal(n: usize, seed: u64) -> Vec<Complex64> {
    let mut r = rng(seed);
    (0..n).map(|_| Complex64::new(standard_cauchy(&mut r), 0.0)).collect()
}

/// The matrix whose limiting Green's function the family's evaluators describe:
/// `i M_N` for the Stephanov family, `D_N` otherwise.
pub fn operator_matrix(family: &DeterministicFamily, n: usize) -> Result<ComplexMatrix> {
    let d = make_deterministic(family, n)?;
    Ok(match family {
        DeterministicFamily::Stephanov { .. } => d.scaled(Complex64::new(0.0, 1.0)),
        _ => d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stephanov_layout() {
        let m = make_deterministic(&DeterministicFamily::Stephanov { mu: 0.5 }, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if matches!((i, j), (0, 1) | (1, 0) | (2, 3) | (3, 2)) { 0.5 } else { 0.0 };
                assert_eq!(m[(i, j)], Complex64::new(expected, 0.0));
            }
        }
        assert!(make_deterministic(&DeterministicFamily::Stephanov { mu: 0.5 }, 5).is_err());
        assert!(make_deterministic(&DeterministicFamily::Stephanov { mu: -1.0 }, 4).is_err());
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(make_deterministic(&DeterministicFamily::Zero, 3).unwrap(), ComplexMatrix::zeros(3));
        assert_eq!(make_deterministic(&DeterministicFamily::Identity, 3).unwrap(), ComplexMatrix::identity(3));
    }

    #[test]
    fn cauchy_diagonal_quantiles() {
        let d = make_deterministic(&DeterministicFamily::CauchyDiagonal { seed: 17 }, 1000).unwrap();
        let mut v: Vec<f64> = d.diagonal_entries().unwrap().iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        // Sampling errors: median ~ pi/(2 sqrt n) = 0.05, quartiles ~ 0.07.
        assert!(v[500].abs() < 0.2);
        assert!((v[250] + 1.0).abs() < 0.25);
        assert!((v[750] - 1.0).abs() < 0.25);
        assert_eq!(d, make_deterministic(&DeterministicFamily::CauchyDiagonal { seed: 17 }, 1000).unwrap());
    }

    #[test]
    fn norm_bounds() {
        assert_eq!(DeterministicFamily::Zero.norm_bound().unwrap(), NormBound::Bounded(0.0));
        assert_eq!(DeterministicFamily::Stephanov { mu: 0.5 }.norm_bound().unwrap(), NormBound::Bounded(2.0));
        assert_eq!(DeterministicFamily::CauchyDiagonal { seed: 1 }.norm_bound().unwrap(), NormBound::Unbounded);
    }

    #[test]
    fn file_family_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let d = ComplexMatrix::from_diagonal(&[Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.5)]).unwrap();
        crate::linalg::io::write_matrix_csv(&path, &d).unwrap();
        let fam = DeterministicFamily::File { path };
        assert_eq!(make_deterministic(&fam, 2).unwrap(), d);
        assert!(make_deterministic(&fam, 3).is_err());
        let bound = fam.norm_bound().unwrap().value().unwrap();
        assert!((bound - 2.0).abs() < 1e-12);
    }

    #[test]
    fn serde_tagging() {
        let f: DeterministicFamily = serde_json::from_str(r#"{"kind":"stephanov","mu":1.0}"#).unwrap();
        assert_eq!(f, DeterministicFamily::Stephanov { mu: 1.0 });
        let z: DeterministicFamily = serde_json::from_str(r#"{"kind":"cauchy-diagonal","seed":3}"#).unwrap();
        assert_eq!(z, DeterministicFamily::CauchyDiagonal { seed: 3 });
    }
}
