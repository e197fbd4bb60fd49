//! Rectangular sublattice of an axis-aligned virtually rectangular lattice:
//! `B = A adj(F(A))` is diagonal with index `|det F(A)|^(n-1)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::exact::symbol::SymReal;
use crate::intlinalg::matrix::{adjugate_det, IntMatrix};
use crate::sparse::decompose::{nu_from_decomposition, row_decompose};
use crate::sparse::lattice::LatticeBasis;

#[derive(Clone, Debug)]
pub struct RectangularSublattice {
    /// Diagonal entries of the sublattice basis `B` (off-diagonal entries are
    /// exactly zero).
    pub diagonal: Vec<SymReal>,
    /// `[L : M] = |det F(A)|^(n-1)`, exactly.
    pub index: BigInt,
    /// The adjugate transform: the columns of `B = A * transform` are the
    /// sublattice basis, and the transform being integral proves membership.
    pub transform: IntMatrix,
    pub det_f: BigInt,
    /// Numeric `(det L / nu(L))^(n-1)` and its agreement with the exact
    /// index (relative tolerance 1e-20).
    pub numeric_cross_check: BigDec,
    pub cross_check_ok: bool,
}

pub fn rectangular_sublattice(a: &LatticeBasis, precision: u32) -> Result<RectangularSublattice> {
    let n = a.n();
    let dec = row_decompose(a);
    if dec.total > n {
        return Err(Error::NotAxisAlignedVR { d: dec.total, n });
    }
    // every d_i = 1: F(A) is square with the primitive row directions
    let f = dec.f_matrix.clone();
    debug_assert_eq!((f.rows(), f.cols()), (n, n));
    let (adj, det_f) = adjugate_det(&f);
    if det_f.is_zero() {
        return Err(Error::SingularBasis(
            "row directions are linearly dependent".into(),
        ));
    }

    // B = A * adj is det(F) * diag(alpha), exactly
    let b = a.mul_int_matrix(&adj);
    let mut diagonal = Vec::with_capacity(n);
    for (i, row) in b.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            assert!(
                v.is_zero(),
                "off-diagonal entry ({}, {}) of A adj(F) is nonzero",
                i,
                j
            );
        }
        diagonal.push(row[i].clone());
        let expect = dec.rows[i].alphas[0]
            .scale(&num_rational::BigRational::from_integer(det_f.clone()));
        debug_assert!(diagonal[i] == expect);
    }

    let index = det_f.abs().pow(n as u32 - 1);

    // numeric cross-check: (det L / nu(L))^(n-1) within 1e-20 relative
    let scale = precision + 10;
    let det_l = a.numeric_det(precision)?.abs();
    let nu = nu_from_decomposition(&dec, precision)?;
    debug_assert!(!nu.is_zero);
    let ratio = det_l
        .div(&nu.numeric_abs, scale)
        .ok_or(Error::NumericallySingular { precision })?;
    let numeric = ratio.pow_usize(n - 1, scale);
    let index_bd = BigDec::from_bigint(&index, scale);
    let tol = index_bd.mul(&BigDec::eps(20, scale), scale);
    let cross_check_ok =
        numeric.sub(&index_bd).abs().cmp_val(&tol) != std::cmp::Ordering::Greater;

    Ok(RectangularSublattice {
        diagonal,
        index,
        transform: adj,
        det_f,
        numeric_cross_check: numeric,
        cross_check_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{lattice, sym};

    /// The optimality example: identity with last row (1, 1, ..., 1, d).
    pub(crate) fn optimality_example(n: usize, d: i64) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                row.push(if i + 1 < n {
                    if i == j {
                        "1".to_string()
                    } else {
                        "0".to_string()
                    }
                } else if j + 1 < n {
                    "1".to_string()
                } else {
                    d.to_string()
                });
            }
            rows.push(row);
        }
        rows
    }

    fn lattice_from_strings(rows: &[Vec<String>]) -> LatticeBasis {
        let borrowed: Vec<Vec<&str>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.as_str()).collect())
            .collect();
        let slices: Vec<&[&str]> = borrowed.iter().map(|r| r.as_slice()).collect();
        lattice(&slices)
    }

    #[test]
    fn optimality_example_has_index_d_pow_n_minus_one() {
        let a = lattice_from_strings(&optimality_example(3, 3));
        let r = rectangular_sublattice(&a, 50).unwrap();
        assert_eq!(r.index, BigInt::from(9));
        assert_eq!(r.det_f, BigInt::from(3));
        let b = a.symbol_basis();
        for d in &r.diagonal {
            assert_eq!(d.clone(), sym(b, "3"));
        }
        assert!(r.cross_check_ok);
    }

    #[test]
    fn lambda2_rectangular_sublattice() {
        let a = lattice(&[&["pi", "2*pi"], &["2", "1"]]);
        let r = rectangular_sublattice(&a, 50).unwrap();
        assert_eq!(r.index, BigInt::from(3));
        assert_eq!(r.det_f, BigInt::from(-3));
        let b = a.symbol_basis();
        assert_eq!(r.diagonal[0], sym(b, "-3*pi"));
        assert_eq!(r.diagonal[1], sym(b, "-3"));
        assert!(r.cross_check_ok);
        // both columns of B are lattice members: A^-1 B = adj is integral by
        // construction; reassemble A * adj and compare with B's diagonal
        let b_cols = a.mul_int_matrix(&r.transform);
        assert_eq!(b_cols[0][0], r.diagonal[0]);
        assert_eq!(b_cols[1][1], r.diagonal[1]);
        assert!(b_cols[0][1].is_zero() && b_cols[1][0].is_zero());
    }

    #[test]
    fn already_rectangular_basis_has_index_one() {
        let a = lattice(&[
            &["sqrt2", "0", "0"],
            &["0", "sqrt3", "0"],
            &["0", "0", "pi"],
        ]);
        let r = rectangular_sublattice(&a, 50).unwrap();
        assert_eq!(r.index, BigInt::from(1));
        let b = a.symbol_basis();
        assert_eq!(r.diagonal[0], sym(b, "sqrt2"));
    }

    #[test]
    fn rejects_high_rational_dimension() {
        let a = lattice(&[&["1", "sqrt3"], &["0", "1"]]);
        assert!(matches!(
            rectangular_sublattice(&a, 50),
            Err(Error::NotAxisAlignedVR { d: 3, n: 2 })
        ));
    }
}
