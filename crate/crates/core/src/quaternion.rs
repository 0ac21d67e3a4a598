//! Quaternions in complex-pair form `a + b j`, with `j z = conj(z) j` for complex `z`.
//!
//! The algebra is fixed by the 2x2 representation
//! `M(a + b j) = [[a, i b], [i conj(b), conj(a)]]`, which is a ring isomorphism
//! onto its image. `M(q)` is a scaled unitary, so `|q|` is both the Euclidean
//! norm of `(a, b)` and the spectral norm of `M(q)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// 2x2 complex matrix, row major.
pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    /// Complex part.
    pub a: Complex64,
    /// Hypercomplex part (coefficient of `j`).
    pub b: Complex64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    pub const ONE: Quaternion = Quaternion::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    pub const J: Quaternion = Quaternion::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));

    pub const fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    pub const fn complex(a: Complex64) -> Self {
        Self::new(a, Complex64::new(0.0, 0.0))
    }

    pub const fn real(x: f64) -> Self {
        Self::complex(Complex64::new(x, 0.0))
    }

    /// `lambda + eps j`, the spectral parameter used throughout.
    pub const fn spectral(lambda: Complex64, eps: f64) -> Self {
        Self::new(lambda, Complex64::new(eps, 0.0))
    }

    /// `tau + j`, the weight of the sum and product rules.
    pub const fn t(tau: f64) -> Self {
        Self::new(Complex64::new(tau, 0.0), Complex64::new(1.0, 0.0))
    }

    /// Real part of the hypercomplex coefficient, `eps` for `lambda + eps j`.
    pub fn eps(&self) -> f64 {
        self.b.re
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.a.norm().hypot(self.b.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    /// `(conj(a) - b j) / (|a|^2 + |b|^2)`.
    pub fn inv(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(Self::new(self.a.conj() / n2, -self.b / n2))
    }

    /// Elementwise product `(a + b j).(c + d j) = a c + b d j`.
    pub fn dot(&self, other: &Self) -> Self {
        Self::new(self.a * other.a, self.b * other.b)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s)
    }

    pub fn to_matrix(&self) -> Mat2 {
        [[self.a, I * self.b], [I * self.b.conj(), self.a.conj()]]
    }

    /// Reads `a` and `b` off the first row of a representation matrix.
    pub fn from_matrix(m: &Mat2) -> Self {
        Self::new(m[0][0], -I * m[0][1])
    }

    /// Largest entrywise distance of `m` from the representation pattern.
    pub fn pattern_deviation(m: &Mat2) -> f64 {
        let q = Self::from_matrix(m);
        let r = q.to_matrix();
        (m[1][0] - r[1][0]).norm().max((m[1][1] - r[1][1]).norm())
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        self.a += rhs.a;
        self.b += rhs.b;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

/// `(a + b j)(c + d j) = (a c - b conj(d)) + (a d + b conj(c)) j`.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.a * rhs.a - self.b * rhs.b.conj(),
            self.a * rhs.b + self.b * rhs.a.conj(),
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {:+}i) + ({} {:+}i)j",
            self.a.re, self.a.im, self.b.re, self.b.im
        )
    }
}

pub fn q_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

pub fn q_inv(q: Quaternion) -> Result<Quaternion> {
    q.inv()
}

pub fn q_dot(p: Quaternion, q: Quaternion) -> Quaternion {
    p.dot(&q)
}

pub fn q_norm(q: Quaternion) -> f64 {
    q.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        out
    }

    fn mat_dist(x: &Mat2, y: &Mat2) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += (x[i][j] - y[i][j]).norm_sqr();
            }
        }
        s.sqrt()
    }

    // Largest singular value of a 2x2 matrix from the eigenvalues of M^H M.
    fn spectral_norm_2x2(m: &Mat2) -> f64 {
        let h00 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
        let h11 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
        let h01 = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
        let mean = 0.5 * (h00 + h11);
        let disc = (0.25 * (h00 - h11).powi(2) + h01.norm_sqr()).sqrt();
        (mean + disc).sqrt()
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64)
            .prop_map(|(w, x, y, z)| Quaternion::new(c(w, x), c(y, z)))
    }

    #[test]
    fn j_squared_is_minus_one() {
        assert_eq!(Quaternion::J * Quaternion::J, Quaternion::real(-1.0));
    }

    #[test]
    fn one_is_identity() {
        let q = Quaternion::new(c(0.3, -1.2), c(2.0, 0.7));
        assert_eq!(Quaternion::ONE * q, q);
        assert_eq!(q * Quaternion::ONE, q);
    }

    #[test]
    fn product_matches_representation_example() {
        let p = Quaternion::new(c(1.0, 0.0), c(2.0, 0.0));
        let q = Quaternion::new(c(3.0, 0.0), c(1.0, 0.0));
        let oracle = Quaternion::from_matrix(&mat_mul(&p.to_matrix(), &q.to_matrix()));
        assert_eq!(p * q, oracle);
        assert_eq!(p * q, Quaternion::new(c(1.0, 0.0), c(7.0, 0.0)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Quaternion::ONE.inv().unwrap(), Quaternion::ONE);
        let q = Quaternion::new(c(0.0, 0.0), c(2.0, 0.0));
        assert_eq!(q.inv().unwrap(), Quaternion::new(c(0.0, 0.0), c(-0.5, 0.0)));

        let (lambda, eps) = (c(0.7, -1.3), 0.4);
        let got = Quaternion::spectral(lambda, eps).inv().unwrap();
        let d = lambda.norm_sqr() + eps * eps;
        let expected = Quaternion::new(lambda.conj() / d, c(-eps / d, 0.0));
        assert!((got - expected).norm() < 1e-15);
        assert!(matches!(Quaternion::ZERO.inv(), Err(Error::ZeroQuaternion)));
    }

    #[test]
    fn elementwise_product_examples() {
        let p = Quaternion::new(c(1.0, 0.0), c(2.0, 0.0));
        let q = Quaternion::new(c(3.0, 0.0), c(4.0, 0.0));
        assert_eq!(q_dot(p, q), Quaternion::new(c(3.0, 0.0), c(8.0, 0.0)));

        let g = Quaternion::new(c(0.4, -0.2), c(0.9, 0.0));
        assert_eq!(Quaternion::t(0.0).dot(&g), Quaternion::new(c(0.0, 0.0), g.b));
        assert_eq!(Quaternion::t(0.3).dot(&g), Quaternion::new(g.a * 0.3, g.b));
    }

    #[test]
    fn elementwise_product_is_not_the_matrix_hadamard_product() {
        let p = Quaternion::new(c(1.0, 1.0), c(2.0, -1.0));
        let q = Quaternion::new(c(0.5, 2.0), c(-1.0, 3.0));
        let (mp, mq) = (p.to_matrix(), q.to_matrix());
        let hadamard = [
            [mp[0][0] * mq[0][0], mp[0][1] * mq[0][1]],
            [mp[1][0] * mq[1][0], mp[1][1] * mq[1][1]],
        ];
        assert!(mat_dist(&hadamard, &p.dot(&q).to_matrix()) > 1.0);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Quaternion::ONE.norm(), 1.0);
        let q = Quaternion::new(c(3.0, 0.0), c(4.0, 0.0));
        assert!((q.norm() - 5.0).abs() < 1e-15);
        assert!((spectral_norm_2x2(&q.to_matrix()) - 5.0).abs() < 1e-12);
        assert_eq!(Quaternion::spectral(c(0.0, 0.0), 0.25).norm(), 0.25);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn representation_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).to_matrix();
            let rhs = mat_mul(&p.to_matrix(), &q.to_matrix());
            prop_assert!(mat_dist(&lhs, &rhs) <= 1e-12 * (1.0 + p.norm() * q.norm()));
        }

        #[test]
        fn representation_is_additive(p in quat(), q in quat()) {
            let lhs = (p + q).to_matrix();
            let (mp, mq) = (p.to_matrix(), q.to_matrix());
            let rhs = [[mp[0][0] + mq[0][0], mp[0][1] + mq[0][1]], [mp[1][0] + mq[1][0], mp[1][1] + mq[1][1]]];
            prop_assert!(mat_dist(&lhs, &rhs) <= 1e-12 * (1.0 + p.norm() + q.norm()));
        }

        #[test]
        fn norm_is_spectral_norm(q in quat()) {
            prop_assert!((q.norm() - spectral_norm_2x2(&q.to_matrix())).abs() <= 1e-12 * (1.0 + q.norm()));
        }

        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            prop_assert!((p * q).norm() <= p.norm() * q.norm() * (1.0 + 1e-12) + 1e-300);
        }

        #[test]
        fn inverse_is_two_sided(q in quat()) {
            prop_assume!(q.norm() > 1e-3);
            let qi = q.inv().unwrap();
            prop_assert!((q * qi - Quaternion::ONE).norm() <= 1e-12);
            prop_assert!((qi * q - Quaternion::ONE).norm() <= 1e-12);
            prop_assert!((qi.norm() - 1.0 / q.norm()).abs() <= 1e-12 / q.norm());
        }

        #[test]
        fn dot_is_commutative_associative_distributive(p in quat(), q in quat(), r in quat()) {
            prop_assert_eq!(p.dot(&q), q.dot(&p));
            prop_assert!((p.dot(&q).dot(&r) - p.dot(&q.dot(&r))).norm() <= 1e-12 * (1.0 + p.norm() * q.norm() * r.norm()));
            prop_assert!((p.dot(&(q + r)) - (p.dot(&q) + p.dot(&r))).norm() <= 1e-12 * (1.0 + p.norm() * (q.norm() + r.norm())));
        }

        #[test]
        fn matrix_round_trip(q in quat()) {
            prop_assert_eq!(Quaternion::from_matrix(&q.to_matrix()), q);
            prop_assert!(Quaternion::pattern_deviation(&q.to_matrix()) == 0.0);
        }
    }
}
