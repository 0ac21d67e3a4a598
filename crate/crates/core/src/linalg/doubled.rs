//! The doubled operator `(X - q)` acting on `C^{2N}`.
//!
//! Block `(i, j)` (rows `2i..2i+2`, columns `2j..2j+2`) is
//! `[[X_ij, 0], [0, conj(X_ji)]] - delta_ij M(q)`. Conjugating by the permutation
//! that collects even and odd indices gives `[[X - lambda, -i eps], [-i eps, X^H - conj(lambda)]]`,
//! the Hermitianized form; that form is never built here.

use std::sync::atomic::{AtomicUsize, Ordering};

use faer::linalg::solvers::{DenseSolveCore, PartialPivLu, Solve};
use faer::{Mat, MatRef};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::matrix::{check_pivots, ComplexMatrix};
use crate::quaternion::{Mat2, Quaternion};

/// Slack allowed on top of the `1/eps` resolvent bound.
pub const RESOLVENT_SLACK: f64 = 1e-8;

static BOUND_VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Number of resolvent-bound violations observed in this process.
pub fn resolvent_bound_violations() -> usize {
    BOUND_VIOLATIONS.load(Ordering::Relaxed)
}

/// Checks `norm <= 1/eps + slack`, counting and reporting a violation.
pub fn check_resolvent_bound(norm: f64, eps: f64) -> Result<()> {
    let bound = 1.0 / eps;
    if norm > bound + RESOLVENT_SLACK {
        BOUND_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        return Err(Error::ResolventBound { norm, bound });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct DoubledOperator {
    q: Quaternion,
    n: usize,
    matrix: Mat<Complex64>,
}

pub fn build_doubled(x: &ComplexMatrix, q: Quaternion) -> DoubledOperator {
    let n = x.n();
    let m = q.to_matrix();
    let zero = Complex64::new(0.0, 0.0);
    let matrix = Mat::from_fn(2 * n, 2 * n, |r, c| {
        let (i, si) = (r / 2, r % 2);
        let (j, sj) = (c / 2, c % 2);
        let base = match (si, sj) {
            (0, 0) => x[(i, j)],
            (1, 1) => x[(j, i)].conj(),
            _ => zero,
        };
        if i == j {
            base - m[si][sj]
        } else {
            base
        }
    });
    DoubledOperator { q, n, matrix }
}

impl DoubledOperator {
    pub fn q(&self) -> Quaternion {
        self.q
    }

    /// Size `N` of the underlying matrix (the operator is `2N x 2N`).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Regularization `|b|` of `q = a + b j`.
    pub fn eps(&self) -> f64 {
        self.q.b.norm()
    }

    pub fn matrix(&self) -> MatRef<'_, Complex64> {
        self.matrix.as_ref()
    }

    fn factor(&self) -> Result<PartialPivLu<Complex64>> {
        let lu = self.matrix.partial_piv_lu();
        check_pivots(lu.U(), "doubled operator")?;
        Ok(lu)
    }

    /// Solves `(X - q) x = rhs`, checking the residual and the resolvent bound.
    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 2 * self.n;
        if rhs.len() != dim {
            return Err(Error::InvalidArgument(format!(
                "right-hand side has length {}, expected {dim}",
                rhs.len()
            )));
        }
        let lu = self.factor()?;
        let b = Mat::from_fn(dim, 1, |i, _| rhs[i]);
        let x = lu.solve(&b);

        let ax = &self.matrix * &x;
        let rhs_norm = b.norm_l2();
        let residual = (&ax - &b).norm_l2();
        let limit = 1e-10 * rhs_norm;
        if residual > limit {
            return Err(Error::Residual { residual, limit });
        }
        let eps = self.eps();
        if eps > 0.0 && rhs_norm > 0.0 {
            let ratio = x.norm_l2() / rhs_norm;
            check_resolvent_bound(ratio / (1.0 + 1e-8), eps)?;
        }
        Ok((0..dim).map(|i| x[(i, 0)]).collect())
    }

    /// Full inverse `R(q; X) = (X - q)^{-1}`.
    pub fn inverse(&self) -> Result<Mat<Complex64>> {
        Ok(self.factor()?.inverse())
    }

    /// Diagonal 2x2 blocks `R_ii` of the inverse.
    pub fn inverse_diagonal_blocks(&self) -> Result<Vec<Mat2>> {
        let inv = self.inverse()?;
        Ok((0..self.n)
            .map(|i| {
                let r = 2 * i;
                [
                    [inv[(r, r)], inv[(r, r + 1)]],
                    [inv[(r + 1, r)], inv[(r + 1, r + 1)]],
                ]
            })
            .collect())
    }
}

pub fn solve_doubled(op: &DoubledOperator, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    op.solve(rhs)
}

/// Spectral norm of a 2x2 complex matrix.
pub fn norm_2x2(m: &Mat2) -> f64 {
    let h00 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let h11 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let h01 = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let mean = 0.5 * (h00 + h11);
    let disc = (0.25 * (h00 - h11).powi(2) + h01.norm_sqr()).sqrt();
    (mean + disc).sqrt()
}
