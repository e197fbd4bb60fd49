//! Exact-arithmetic toolkit for the sparse geometry of lattices.
//!
//! The crate is organized in four layers:
//!
//! * [`exact`] — rational scalars, symbol-basis reals (linear structure over
//!   a declared independent symbol set), and real quadratic field elements.
//! * [`intlinalg`] — exact integer linear algebra: Hermite normal form,
//!   saturated integer kernels, adjugates, and kernel-basis reduction against
//!   the classical small-solution bound.
//! * [`sparse`] — rational-dimension analysis of lattice bases, construction
//!   of sparse lattice vectors with verified sup-norm bounds, exact
//!   successive sparsity levels, and rectangular sublattices with exact
//!   index.
//! * [`planar`] — the full 2-dimensional theory over a real quadratic field:
//!   fundamental-domain reduction, virtual-rectangularity decision, isogeny
//!   degrees, geodesic classification, CM detection, and a numeric
//!   j-invariant.
//!
//! All exactness guarantees are conditional on the declared linear
//! independence of the symbol basis; see [`exact::SymbolBasis`].

pub mod bigdec;
pub mod error;
pub mod exact;
pub mod intlinalg;
pub mod planar;
pub mod sparse;
pub mod verify;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
