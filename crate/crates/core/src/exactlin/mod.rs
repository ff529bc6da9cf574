//! Exact scalars (rationals and cyclotomic fields) and dense linear algebra
//! over them: ranks, kernels, images and canonical subspaces.

pub mod cyclotomic;
mod matrix;
mod scalar;
mod subspace;

pub use cyclotomic::{CyclotomicElement, CyclotomicField, MAX_ORDER};
pub use matrix::{ExactMatrix, Rref};
pub use scalar::{Field, FieldElement};
pub use subspace::{image, intersect, kernel, quotient_dim, rank, rational_descent, subspace_equal, Subspace};
