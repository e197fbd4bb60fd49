//! Exact integer and rational linear algebra.

pub mod lll;
pub mod matrix;

pub use lll::{reduce_kernel_basis, siegel_bound_holds, siegel_witness_search, ReducedKernel};
pub use matrix::{adjugate_det, hnf, integer_kernel, rank, IntMatrix, KernelBasis};
