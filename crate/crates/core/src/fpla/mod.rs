//! Exact linear algebra over the prime field `F_p`.
//!
//! Matrices are dense and carry their modulus; mixing moduli is an error.
//! For `p = 2` the row reductions switch to a bit-packed path that stores
//! 64 columns per word.

mod bitmat;
mod matrix;
mod scalar;
mod subspace;

pub use bitmat::BitMatrix;
pub use matrix::{FpMatrix, Rref};
pub use scalar::{inv_mod, FpScalar};
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace, DEFAULT_SUBSPACE_BUDGET_BITS};
