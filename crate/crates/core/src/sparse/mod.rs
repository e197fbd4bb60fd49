//! Rational-dimension analysis of lattice bases and the sparse-vector
//! constructions built on it.

pub mod decompose;
pub mod find;
pub mod lattice;
pub mod levels;
pub mod minima;
pub mod rect;

pub use decompose::{mu_estimate, nu, rational_dimension, row_decompose, MuEstimate, NuValue, RowDecomposition};
pub use find::{find_sparse, verify_thm1_instance, SparseReport};
pub use lattice::LatticeBasis;
pub use levels::{sparsity_levels, LevelWitness, SparsityLevels, DEFAULT_DIMENSION_CAP};
pub use minima::{sparse_minima_oracle, MinimaResult};
pub use rect::{rectangular_sublattice, RectangularSublattice};
