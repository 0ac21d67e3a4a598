//! Globally adaptive Gauss-Kronrod (7/15) quadrature over a finite interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Values that can be integrated: a real vector space with a norm.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Quaternion {
    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: Integrand>(f: &impl Fn(f64) -> Result<T>, a: f64, b: f64) -> Result<(T, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = half * XGK[k];
        let sum = f(center - dx)? + f(center + dx)?;
        kronrod = kronrod + sum * WGK[k];
        if k % 2 == 1 {
            gauss = gauss + sum * WG[k / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    Ok((kronrod, (kronrod - gauss).magnitude()))
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]` to absolute error `tol`, splitting the worst segment first.
pub fn integrate<T: Integrand>(f: impl Fn(f64) -> Result<T>, a: f64, b: f64, tol: f64) -> Result<T> {
    integrate_with_limit(f, a, b, tol, 20_000)
}

pub fn integrate_with_limit<T: Integrand>(
    f: impl Fn(f64) -> Result<T>,
    a: f64,
    b: f64,
    tol: f64,
    max_segments: usize,
) -> Result<T> {
    if !(a.is_finite() && b.is_finite() && a < b && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs finite a < b and tol > 0 (got [{a}, {b}], tol {tol})"
        )));
    }
    let (value, error) = gk15(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total_error = error;
    while !(total_error <= tol) {
        if heap.len() >= max_segments || !total_error.is_finite() {
            return Err(Error::Quadrature {
                achieved: total_error,
                requested: tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(&f, worst.a, mid)?;
        let (rv, re) = gk15(&f, mid, worst.b)?;
        total_error += le + re - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re });
    }
    // Re-sum from scratch so the running error bookkeeping cannot drift the value.
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(segments.iter().fold(T::zero(), |acc, s| acc + s.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| Ok(x.powi(5) - 3.0 * x * x + 1.0), -1.0, 2.0, 1e-12).unwrap();
        assert!((v - (63.0 / 6.0 - 9.0 + 3.0)).abs() < 1e-12);
    }

    #[test]
    fn sharp_peak() {
        let w = 1e-4;
        let v = integrate(|x| Ok(w / (std::f64::consts::PI * (x * x + w * w))), -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 / std::f64::consts::PI * (1.0 / w).atan();
        assert!((v - exact).abs() < 1e-9);
    }

    #[test]
    fn reports_failure() {
        let r = integrate_with_limit(|x: f64| Ok((1.0 / x).sin()), 1e-6, 1.0, 1e-14, 5);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
        let r = integrate(|x: f64| Ok(1.0 / x), -1.0, 1.0, 1e-8);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn quaternion_values() {
        let v = integrate(|x| Ok(Quaternion::spectral(num_complex::Complex64::new(x, 0.0), 2.0 * x)), 0.0, 1.0, 1e-12)
            .unwrap();
        assert!((v - Quaternion::spectral(num_complex::Complex64::new(0.5, 0.0), 1.0)).norm() < 1e-14);
    }
}
