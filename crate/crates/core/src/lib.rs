//! Quaternionic Green's functions of non-Hermitian matrices.
//!
//! The crate evaluates `G(q; X)` for finite matrices, solves the sum and product
//! self-consistency laws for the limiting Green's function of `D + A` and `D A`,
//! and compares the resulting spectral densities with Monte Carlo eigenvalue samples.

// Argument checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(feature = "lapack")]
extern crate openblas_src as _;

pub mod ensembles;
pub mod experiments;
pub mod error;
pub mod greens;
pub mod laws;
pub mod linalg;
pub mod quad;
pub mod quaternion;
pub mod rng;

pub use error::{Error, Result};
pub use quaternion::{q_dot, q_inv, q_mul, q_norm, Quaternion};
