//! Spectra of `D A` with `D` diagonal and `A` a Ginibre matrix (`tau = 0` Gaussian).
//!
//! Running Arnoldi on `D A` from `e_1`, each new vector `A v_k` is a fresh Gaussian column
//! because `v_k` is orthogonal to the earlier ones. So `D G = V H` with `G` i.i.d. Gaussian,
//! `V = diag(1, Q)` unitary and `H` upper Hessenberg, and `eig(D A)` has the law of `eig(H)`.
//! `H` is the first row of `D G` stacked on the `R` factor of a QR of the remaining rows.
//! This replaces the O(n^3) Hessenberg reduction of a dense eigensolver by one QR.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::qr::no_pivoting::factor::{qr_in_place, qr_in_place_scratch, recommended_block_size};
use faer::{Mat, Par};
use num_complex::Complex64;

use crate::ensembles::random::{sample_random, EnsembleSpec};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, hessenberg_eigenvalues, ComplexMatrix};
use crate::rng::{complex_gaussian, rng};

/// Hessenberg matrix `H` with `eig(H)` equal in law to `eig(diag(d) A)`.
pub fn product_hessenberg(diag: &[Complex64], seed: u64) -> Result<Mat<Complex64>> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty diagonal".into()));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let mut r = rng(seed);
    let mut row0 = vec![Complex64::new(0.0, 0.0); n];
    let mut rest = Mat::<Complex64>::zeros(n - 1, n);
    for j in 0..n {
        row0[j] = diag[0] * complex_gaussian(&mut r) * scale;
        for i in 1..n {
            rest[(i - 1, j)] = diag[i] * complex_gaussian(&mut r) * scale;
        }
    }
    let mut h = Mat::<Complex64>::zeros(n, n);
    for j in 0..n {
        h[(0, j)] = row0[j];
    }
    if n > 1 {
        let (m, k) = (n - 1, n);
        let bs = recommended_block_size::<Complex64>(m, k);
        let mut coeff = Mat::<Complex64>::zeros(bs, m.min(k));
        let mut buf = MemBuffer::new(qr_in_place_scratch::<Complex64>(m, k, bs, Par::Seq, Default::default()));
        qr_in_place(rest.as_mut(), coeff.as_mut(), Par::Seq, MemStack::new(&mut buf), Default::default());
        drop(buf);
        drop(coeff);
        for j in 0..n {
            for i in 1..n.min(j + 2) {
                h[(i, j)] = rest[(i - 1, j)];
            }
        }
    }
    Ok(h)
}

/// Eigenvalues of `diag(d) A` through the Hessenberg construction.
pub fn product_eigenvalues(diag: &[Complex64], seed: u64) -> Result<Vec<Complex64>> {
    hessenberg_eigenvalues(product_hessenberg(diag, seed)?)
}

/// Eigenvalues of `diag(d) A` by forming the product and running a dense eigensolver.
pub fn product_eigenvalues_dense(diag: &[Complex64], seed: u64) -> Result<Vec<Complex64>> {
    let a = sample_random(&EnsembleSpec::gaussian(diag.len(), 0.0, seed))?;
    let d = ComplexMatrix::from_diagonal(diag)?;
    eigenvalues(&d.matmul(&a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::standard_cauchy;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hessenberg_is_unitarily_similar_to_d_times_rotated_g() {
        // Rebuild G from the same stream, then check eig(H) = eig(D G V^H) with V = diag(1, Q).
        let n = 7;
        let diag: Vec<Complex64> = (0..n).map(|i| c(0.5 + i as f64, 0.3 * i as f64)).collect();
        let seed = 13;
        let h = product_hessenberg(&diag, seed).unwrap();
        for j in 0..n {
            for i in j + 2..n {
                assert_eq!(h[(i, j)], c(0.0, 0.0));
            }
        }

        let mut r = rng(seed);
        let scale = 1.0 / (n as f64).sqrt();
        let mut g = Mat::<Complex64>::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                g[(i, j)] = complex_gaussian(&mut r) * scale;
            }
        }
        let dg = Mat::from_fn(n, n, |i, j| diag[i] * g[(i, j)]);
        let rest = Mat::from_fn(n - 1, n, |i, j| dg[(i + 1, j)]);
        let q = rest.qr().compute_Q();
        let v = Mat::from_fn(n, n, |i, j| match (i, j) {
            (0, 0) => c(1.0, 0.0),
            (0, _) | (_, 0) => c(0.0, 0.0),
            _ => q[(i - 1, j - 1)],
        });
        let vh = &v * &h;
        assert!((&vh - &dg).norm_l2() < 1e-12 * dg.norm_l2());

        let mut a = eigenvalues(&ComplexMatrix::from_mat(h).unwrap()).unwrap();
        let mut b = eigenvalues(&ComplexMatrix::from_mat(&dg * v.adjoint()).unwrap()).unwrap();
        let key = |z: &Complex64| (z.re * 1e6).round() as i64;
        a.sort_by_key(key);
        b.sort_by_key(key);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn single_entry() {
        let vals = product_eigenvalues(&[c(2.0, 0.0)], 1).unwrap();
        assert_eq!(vals.len(), 1);
        let h = product_hessenberg(&[c(2.0, 0.0)], 1).unwrap();
        assert_eq!(vals[0], h[(0, 0)]);
    }

    #[test]
    fn hessenberg_and_dense_routes_agree_in_law() {
        let n = 200;
        let mut r = rng(99);
        let diag: Vec<Complex64> = (0..n).map(|_| c(standard_cauchy(&mut r), 0.0)).collect();
        let mut fast = Vec::new();
        let mut dense = Vec::new();
        for seed in 0..10 {
            fast.extend(product_eigenvalues(&diag, 1000 + seed).unwrap().iter().map(|z| z.norm().ln()));
            dense.extend(product_eigenvalues_dense(&diag, 2000 + seed).unwrap().iter().map(|z| z.norm().ln()));
        }
        fast.sort_by(f64::total_cmp);
        dense.sort_by(f64::total_cmp);
        // Two-sample KS distance; the 1% critical value at 2000 + 2000 samples is 0.052.
        let (mut i, mut j, mut d) = (0, 0, 0.0f64);
        while i < fast.len() && j < dense.len() {
            if fast[i] <= dense[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / fast.len() as f64 - j as f64 / dense.len() as f64).abs());
        }
        assert!(d < 0.052, "two-sample KS {d}");
    }
}
