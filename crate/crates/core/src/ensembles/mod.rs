//! Random matrix samplers, deterministic families `D_N` and their limiting Green evaluators.

mod evaluators;
mod family;
mod product;
mod random;

pub use evaluators::{
    cauchy_limit_green, cauchy_limit_green_quadrature, family_green_evaluators, green_of_diagonal, Atoms,
    CauchyLimit, FamilyEvaluators, FiniteMatrix, GreenEvaluator, NegInverse,
};
pub use family::{cauchy_diagonal, make_deterministic, operator_matrix, DeterministicFamily, NormBound};
pub use product::{product_eigenvalues, product_eigenvalues_dense, product_hessenberg};
pub use random::{draw_ratio, sample_random, sample_ratio, EnsembleSpec, EntryDistribution, MAX_CONDITION, MAX_REDRAWS};
