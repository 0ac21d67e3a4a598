//! Dense complex matrices, the doubled operator `(X - q)`, eigenvalues and matrix I/O.

pub mod doubled;
pub mod eig;
pub mod io;
pub mod matrix;

pub use doubled::{build_doubled, resolvent_bound_violations, solve_doubled, DoubledOperator};
pub use eig::{eigenvalues, hessenberg_eigenvalues};
pub use matrix::{condition_number, spectral_norm, ComplexMatrix};
