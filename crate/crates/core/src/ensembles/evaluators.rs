use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use num_complex::Complex64;

use crate::ensembles::family::{DeterministicFamily, NormBound};
use crate::error::{Error, Result};
use crate::greens::green;
use crate::linalg::io::read_matrix_csv;
use crate::linalg::ComplexMatrix;
use crate::quad::integrate;
use crate::quaternion::Quaternion;

/// A limiting Green's function `q -> G_D(q)`.
pub trait GreenEvaluator: Send + Sync {
    fn name(&self) -> String;
    fn eval(&self, q: Quaternion) -> Result<Quaternion>;
}

/// `G(q) = -q^{-1}`, the Green's function of the zero matrix.
#[derive(Clone, Copy, Debug, Default)]
pub struct NegInverse;

impl GreenEvaluator for NegInverse {
    fn name(&self) -> String {
        "zero".into()
    }
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        Ok(-q.inv()?)
    }
}

/// Green's function of a finite spectral measure `sum_k w_k delta_{c_k}`:
/// `sum_k w_k (c_k - q)^{-1}`.
#[derive(Clone, Debug)]
pub struct Atoms {
    name: String,
    points: Vec<Complex64>,
    weights: Vec<f64>,
}

impl Atoms {
    pub fn new(name: impl Into<String>, points: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::InvalidArgument("atoms need matching non-empty points and weights".into()));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|w| *w < 0.0) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("atom weights must be nonnegative and sum to 1".into()));
        }
        Ok(Self { name: name.into(), points, weights })
    }

    pub fn uniform(name: impl Into<String>, points: Vec<Complex64>) -> Result<Self> {
        let w = 1.0 / points.len().max(1) as f64;
        let weights = vec![w; points.len()];
        Self::new(name, points, weights)
    }
}

impl GreenEvaluator for Atoms {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        let mut g = Quaternion::ZERO;
        for (c, w) in self.points.iter().zip(&self.weights) {
            g += (Quaternion::complex(*c) - q).inv()?.scale(*w);
        }
        Ok(g)
    }
}

/// `(1/N) sum_i ((d_i - lambda) - eps j)^{-1}`: the Green's function of `diag(d)` without a solve.
pub fn green_of_diagonal(diag: &[Complex64], q: Quaternion) -> Result<Quaternion> {
    if diag.is_empty() {
        return Err(Error::InvalidArgument("empty diagonal".into()));
    }
    let mut g = Quaternion::ZERO;
    for d in diag {
        g += (Quaternion::complex(*d) - q).inv()?;
    }
    Ok(g.scale(1.0 / diag.len() as f64))
}

/// Green's function of the standard Cauchy law, `(1/pi) int (r - q)^{-1} dr / (1 + r^2)`.
///
/// `q = x + c u` with `c = sqrt(y^2 + |b|^2)` and `u = (i y + b j)/c`, `u^2 = -1`, so the
/// subalgebra spanned by `1, u` is a copy of the complex numbers. Under it the integral is
/// the scalar Cauchy transform `-1/(z + i)` at `z = x + i c`.
pub fn cauchy_limit_green(q: Quaternion) -> Result<Quaternion> {
    let (x, y) = (q.a.re, q.a.im);
    let c = y.hypot(q.b.norm());
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Cauchy-limit Green's function needs q off the real axis, got {q}"
        )));
    }
    let w = -1.0 / Complex64::new(x, 1.0 + c);
    let s = w.im / c;
    Ok(Quaternion::new(Complex64::new(w.re, y * s), q.b * s))
}

/// The same integral by adaptive quadrature in `theta = atan(r)`, to absolute tolerance `tol`.
pub fn cauchy_limit_green_quadrature(q: Quaternion, tol: f64) -> Result<Quaternion> {
    if !(q.a.im.hypot(q.b.norm()) > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Cauchy-limit Green's function needs q off the real axis, got {q}"
        )));
    }
    integrate(
        |theta: f64| Ok((Quaternion::real(theta.tan()) - q).inv()?.scale(1.0 / PI)),
        -FRAC_PI_2,
        FRAC_PI_2,
        tol,
    )
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CauchyLimit;

impl GreenEvaluator for CauchyLimit {
    fn name(&self) -> String {
        "cauchy-limit".into()
    }
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        cauchy_limit_green(q)
    }
}

/// Finite-N Green's function of a fixed matrix, a surrogate for its limit.
#[derive(Clone, Debug)]
pub struct FiniteMatrix {
    name: String,
    matrix: ComplexMatrix,
    diagonal: Option<Vec<Complex64>>,
}

impl FiniteMatrix {
    pub fn new(name: impl Into<String>, matrix: ComplexMatrix) -> Self {
        let diagonal = matrix.diagonal_entries();
        Self { name: name.into(), matrix, diagonal }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

impl GreenEvaluator for FiniteMatrix {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        match &self.diagonal {
            Some(d) => green_of_diagonal(d, q),
            None => green(&self.matrix, q),
        }
    }
}

/// Evaluators for `G_D` and, where `D` is invertible, `G_{D^{-1}}`.
#[derive(Clone)]
pub struct FamilyEvaluators {
    pub direct: Arc<dyn GreenEvaluator>,
    inverse: Option<Arc<dyn GreenEvaluator>>,
    pub norm_bound: NormBound,
}

impl FamilyEvaluators {
    pub fn inverse(&self) -> Result<&dyn GreenEvaluator> {
        self.inverse.as_deref().ok_or_else(|| {
            Error::Unsupported(format!("family `{}` has no inverse evaluator", self.direct.name()))
        })
    }
}

pub fn family_green_evaluators(family: &DeterministicFamily) -> Result<FamilyEvaluators> {
    let norm_bound = family.norm_bound()?;
    let (direct, inverse): (Arc<dyn GreenEvaluator>, Option<Arc<dyn GreenEvaluator>>) = match family {
        DeterministicFamily::Zero => (Arc::new(NegInverse), None),
        DeterministicFamily::Identity => {
            let one = Arc::new(Atoms::uniform("identity", vec![Complex64::new(1.0, 0.0)])?);
            (one.clone(), Some(one))
        }
        DeterministicFamily::Stephanov { mu } => {
            // Spectrum of i M_N is {i mu, -i mu}; that of its inverse is {-i/mu, i/mu}.
            let direct = Atoms::uniform("stephanov", vec![Complex64::new(0.0, *mu), Complex64::new(0.0, -mu)])?;
            let inverse =
                Atoms::uniform("stephanov-inverse", vec![Complex64::new(0.0, 1.0 / mu), Complex64::new(0.0, -1.0 / mu)])?;
            (Arc::new(direct), Some(Arc::new(inverse)))
        }
        DeterministicFamily::CauchyDiagonal { .. } => (Arc::new(CauchyLimit), Some(Arc::new(CauchyLimit))),
        DeterministicFamily::File { path } => {
            let d = read_matrix_csv(path)?;
            let inverse = d.inverse().ok().map(|inv| Arc::new(FiniteMatrix::new("file-inverse", inv)) as Arc<dyn GreenEvaluator>);
            (Arc::new(FiniteMatrix::new("file", d)), inverse)
        }
    };
    Ok(FamilyEvaluators { direct, inverse, norm_bound })
}
