use std::ops::Index;

use faer::linalg::solvers::DenseSolveCore;
use faer::{Mat, MatRef};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest admissible pivot magnitude of an LU factorization.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Dense square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    inner: Mat<Complex64>,
}

impl ComplexMatrix {
    pub fn from_mat(inner: Mat<Complex64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::InvalidArgument(format!(
                "matrix must be square, got {}x{}",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if inner.nrows() == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        for j in 0..inner.ncols() {
            for i in 0..inner.nrows() {
                if !inner[(i, j)].is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "non-finite entry at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { inner })
    }

    /// Builds the matrix without the finiteness scan; for entries produced by trusted code.
    pub(crate) fn from_mat_unchecked(inner: Mat<Complex64>) -> Self {
        debug_assert_eq!(inner.nrows(), inner.ncols());
        Self { inner }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        Self::from_mat(Mat::from_fn(n, n, f))
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_mat_unchecked(Mat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_mat_unchecked(Mat::identity(n, n))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        Self::from_fn(n, |i, j| if i == j { diag[i] } else { Complex64::new(0.0, 0.0) })
    }

    pub fn n(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_ref(&self) -> MatRef<'_, Complex64> {
        self.inner.as_ref()
    }

    pub fn into_inner(self) -> Mat<Complex64> {
        self.inner
    }

    /// Diagonal entries if every off-diagonal entry is exactly zero.
    pub fn diagonal_entries(&self) -> Option<Vec<Complex64>> {
        let n = self.n();
        for j in 0..n {
            for i in 0..n {
                if i != j && self.inner[(i, j)] != Complex64::new(0.0, 0.0) {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.inner[(i, i)]).collect())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n()).map(|i| self.inner[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm_l2()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::from_mat_unchecked(Mat::from_fn(self.n(), self.n(), |i, j| self.inner[(i, j)] * s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self::from_mat_unchecked(&self.inner + &other.inner))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self::from_mat_unchecked(&self.inner * &other.inner))
    }

    /// Inverse through LU with partial pivoting; fails on a vanishing pivot.
    pub fn inverse(&self) -> Result<Self> {
        let lu = self.inner.partial_piv_lu();
        check_pivots(lu.U(), "matrix inverse")?;
        Ok(Self::from_mat_unchecked(lu.inverse()))
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

pub(crate) fn check_pivots(u: MatRef<'_, Complex64>, context: &'static str) -> Result<()> {
    let n = u.nrows().min(u.ncols());
    let mut smallest = f64::INFINITY;
    for i in 0..n {
        smallest = smallest.min(u[(i, i)].norm());
    }
    if !(smallest >= PIVOT_FLOOR) {
        return Err(Error::Singular {
            context,
            pivot: smallest,
        });
    }
    Ok(())
}

/// Largest singular value.
pub fn spectral_norm(x: &ComplexMatrix) -> Result<f64> {
    let sv = x
        .as_ref()
        .singular_values()
        .map_err(|e| Error::Eigen(format!("singular value decomposition: {e:?}")))?;
    Ok(sv.into_iter().fold(0.0, f64::max))
}

/// Ratio of largest to smallest singular value (infinite when singular).
pub fn condition_number(x: &ComplexMatrix) -> Result<f64> {
    let sv = x
        .as_ref()
        .singular_values()
        .map_err(|e| Error::Eigen(format!("singular value decomposition: {e:?}")))?;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(if min > 0.0 { max / min } else { f64::INFINITY })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ComplexMatrix::from_fn(n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .unwrap()
    }

    // Power iteration on X^H X, independent of the SVD route.
    fn power_norm(x: &ComplexMatrix) -> f64 {
        let n = x.n();
        let mut v: Vec<Complex64> = (0..n).map(|i| c(1.0 + i as f64 * 0.1, 0.3)).collect();
        let mut est = 0.0;
        for _ in 0..2000 {
            let xv: Vec<Complex64> = (0..n).map(|i| (0..n).map(|k| x[(i, k)] * v[k]).sum()).collect();
            let w: Vec<Complex64> = (0..n)
                .map(|k| (0..n).map(|i| x[(i, k)].conj() * xv[i]).sum())
                .collect();
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v = w.iter().map(|z| z / norm).collect();
            est = norm.sqrt();
        }
        est
    }

    #[test]
    fn rejects_non_finite_and_non_square() {
        assert!(ComplexMatrix::from_fn(2, |i, _| if i == 1 { c(f64::NAN, 0.0) } else { c(1.0, 0.0) }).is_err());
        assert!(ComplexMatrix::from_mat(Mat::zeros(2, 3)).is_err());
        assert!(ComplexMatrix::from_mat(Mat::zeros(0, 0)).is_err());
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&ComplexMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-12);
        let d = ComplexMatrix::from_diagonal(&[c(3.0, 0.0), c(0.0, -4.0)]).unwrap();
        assert!((spectral_norm(&d).unwrap() - 4.0).abs() < 1e-12);
        for seed in 0..5 {
            let x = random(6, seed);
            let s = spectral_norm(&x).unwrap();
            assert!((s - power_norm(&x)).abs() <= 1e-8 * s, "seed {seed}");
        }
    }

    #[test]
    fn inverse_detects_singularity() {
        let x = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(x.inverse(), Err(Error::Singular { .. })));
        let y = random(7, 3);
        let prod = y.matmul(&y.inverse().unwrap()).unwrap();
        let err = prod.add(&ComplexMatrix::identity(7).scaled(c(-1.0, 0.0))).unwrap().frobenius_norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn diagonal_detection() {
        let d = ComplexMatrix::from_diagonal(&[c(1.0, 2.0), c(-3.0, 0.0)]).unwrap();
        assert_eq!(d.diagonal_entries(), Some(vec![c(1.0, 2.0), c(-3.0, 0.0)]));
        assert_eq!(random(3, 1).diagonal_entries(), None);
        assert_eq!(d.trace(), c(-2.0, 2.0));
    }
}
