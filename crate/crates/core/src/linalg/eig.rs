use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

/// Eigenvalues of a dense complex matrix, with multiplicity.
///
/// The trace identity is checked on the way out.
pub fn eigenvalues(x: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = x.n();
    let vals = x
        .as_ref()
        .eigenvalues()
        .map_err(|e| Error::Eigen(format!("dense eigensolver on {n}x{n}: {e:?}")))?;
    check_trace(&vals, x.trace(), x.frobenius_norm())?;
    Ok(vals)
}

fn check_trace(vals: &[Complex64], trace: Complex64, scale: f64) -> Result<()> {
    if vals.iter().any(|z| !z.is_finite()) {
        return Err(Error::Eigen("non-finite eigenvalue".into()));
    }
    let sum: Complex64 = vals.iter().sum();
    let limit = 1e-8 * vals.len() as f64 * scale.max(1.0);
    let err = (sum - trace).norm();
    if err > limit {
        return Err(Error::Eigen(format!(
            "eigenvalue sum misses the trace by {err:e} (limit {limit:e})"
        )));
    }
    Ok(())
}

/// Eigenvalues of an upper Hessenberg matrix (entries below the first subdiagonal are ignored).
///
/// With the `lapack` feature this runs the small-bulge multishift QR of LAPACK `zhseqr`
/// directly on the Hessenberg form; otherwise it falls back to the dense faer solver.
pub fn hessenberg_eigenvalues(h: Mat<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    if n == 0 || h.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "Hessenberg matrix must be square and non-empty, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let mut trace = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for j in 0..n {
        for i in 0..n.min(j + 2) {
            scale += h[(i, j)].norm_sqr();
        }
        trace += h[(j, j)];
    }
    let vals = hessenberg_impl(h)?;
    check_trace(&vals, trace, scale.sqrt())?;
    Ok(vals)
}

#[cfg(feature = "lapack")]
fn hessenberg_impl(h: Mat<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let ni = i32::try_from(n).map_err(|_| Error::InvalidArgument(format!("dimension {n} too large")))?;
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![zero; n * n];
    for j in 0..n {
        for i in 0..n.min(j + 2) {
            a[j * n + i] = h[(i, j)];
        }
    }
    drop(h);

    let mut w = vec![zero; n];
    let mut z = [zero];
    let mut query = [zero];
    let mut info = 0i32;
    // SAFETY: all buffers are sized as LAPACK requires for job = 'E', compz = 'N'.
    unsafe {
        lapack::zhseqr(b'E', b'N', ni, 1, ni, &mut a, ni, &mut w, &mut z, 1, &mut query, -1, &mut info);
    }
    if info != 0 {
        return Err(Error::Eigen(format!("zhseqr workspace query returned info = {info}")));
    }
    let lwork = (query[0].re as usize).max(n).max(1);
    let mut work = vec![zero; lwork];
    unsafe {
        lapack::zhseqr(b'E', b'N', ni, 1, ni, &mut a, ni, &mut w, &mut z, 1, &mut work, lwork as i32, &mut info);
    }
    match info {
        0 => Ok(w),
        i if i > 0 => Err(Error::Eigen(format!(
            "zhseqr failed to converge; {} eigenvalues undetermined",
            n as i32 - i + 1
        ))),
        i => Err(Error::Eigen(format!("zhseqr rejected argument {}", -i))),
    }
}

#[cfg(not(feature = "lapack"))]
fn hessenberg_impl(h: Mat<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let h = Mat::from_fn(n, n, |i, j| if i <= j + 1 { h[(i, j)] } else { Complex64::new(0.0, 0.0) });
    h.eigenvalues()
        .map_err(|e| Error::Eigen(format!("dense eigensolver on {n}x{n}: {e:?}")))
}
