//! Full-rank lattice bases over a symbol basis, plus the numeric matrix
//! helpers (determinant, inverse) used by the bound machinery.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::exact::symbol::{same_basis, SymReal, SymbolBasis};
use crate::intlinalg::matrix::{rank, IntMatrix};

/// A nonsingular basis matrix `A` with entries in the span of a shared
/// symbol basis. The lattice is `A * Z^n` (columns generate); the rows drive
/// the rational-dimension analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeBasis {
    n: usize,
    basis: Arc<SymbolBasis>,
    /// Row-major entries.
    entries: Vec<SymReal>,
}

impl LatticeBasis {
    /// Validate and build. Singularity is rejected either exactly (the rows
    /// are dependent over the rationals as coefficient tensors) or
    /// numerically (the determinant at `precision` digits is below the
    /// ambiguity threshold).
    pub fn new(basis: Arc<SymbolBasis>, entries: Vec<SymReal>, precision: u32) -> Result<Self> {
        let n2 = entries.len();
        let n = (n2 as f64).sqrt().round() as usize;
        if n == 0 || n * n != n2 {
            return Err(Error::InvalidArgument(format!(
                "entry count {} is not a positive square",
                n2
            )));
        }
        for e in &entries {
            if !same_basis(e.basis(), &basis) {
                return Err(Error::InvalidArgument(
                    "entries use different symbol bases".into(),
                ));
            }
        }
        let lat = LatticeBasis { n, basis, entries };

        // exact certificate: rows dependent over Q as coefficient tensors
        let m = lat.basis.len();
        let mut tensor_rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n * m);
            for j in 0..n {
                row.extend(lat.entry(i, j).coeffs().iter().cloned());
            }
            tensor_rows.push(row);
        }
        if rational_rank(&tensor_rows) < n {
            return Err(Error::SingularBasis(
                "rows are linearly dependent over the rationals".into(),
            ));
        }

        // numeric certificate at guard precision
        let det = lat.numeric_det(precision)?;
        let threshold = precision.saturating_sub(5);
        if det.abs().cmp_val(&BigDec::eps(threshold, det.scale())) == std::cmp::Ordering::Less {
            return Err(Error::AmbiguousSign {
                precision,
                threshold,
            });
        }
        Ok(lat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbol_basis(&self) -> &Arc<SymbolBasis> {
        &self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> &SymReal {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[SymReal] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Exact `A * y` for an integer vector (combination of columns).
    pub fn mul_int_vector(&self, y: &[BigInt]) -> Vec<SymReal> {
        assert_eq!(y.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = SymReal::zero(self.basis.clone());
                for (j, c) in y.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    acc = acc.add(
                        &self
                            .entry(i, j)
                            .scale(&BigRational::from_integer(c.clone())),
                    );
                }
                acc
            })
            .collect()
    }

    /// Exact `A * M` for an integer matrix.
    pub fn mul_int_matrix(&self, m: &IntMatrix) -> Vec<Vec<SymReal>> {
        assert_eq!(m.rows(), self.n);
        (0..self.n)
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let mut acc = SymReal::zero(self.basis.clone());
                        for k in 0..self.n {
                            let c = m.get(k, j);
                            if c.is_zero() {
                                continue;
                            }
                            acc = acc.add(
                                &self
                                    .entry(i, k)
                                    .scale(&BigRational::from_integer(c.clone())),
                            );
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// `|A|`: max absolute entry, numerically.
    pub fn sup_norm(&self, precision: u32) -> Result<BigDec> {
        let mut best = BigDec::zero(precision);
        for e in &self.entries {
            let v = e.abs_eval(precision)?;
            if v.cmp_val(&best) == std::cmp::Ordering::Greater {
                best = v;
            }
        }
        Ok(best)
    }

    pub fn to_numeric(&self, precision: u32) -> Result<Vec<Vec<BigDec>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).eval(precision)).collect())
            .collect()
    }

    pub fn numeric_det(&self, precision: u32) -> Result<BigDec> {
        let m = self.to_numeric(precision)?;
        Ok(numeric_det(m, precision))
    }

    pub fn numeric_inverse(&self, precision: u32) -> Result<Vec<Vec<BigDec>>> {
        let m = self.to_numeric(precision)?;
        numeric_inverse(m, precision)
    }

    /// Max row 1-norm of the numeric inverse (the infinity operator norm).
    pub fn inverse_inf_norm(&self, precision: u32) -> Result<BigDec> {
        let inv = self.numeric_inverse(precision)?;
        let scale = precision + 10;
        let mut best = BigDec::zero(scale);
        for row in &inv {
            let mut s = BigDec::zero(scale);
            for v in row {
                s = s.add(&v.abs());
            }
            if s.cmp_val(&best) == std::cmp::Ordering::Greater {
                best = s;
            }
        }
        Ok(best)
    }
}

/// Rank over Q of a rational row list.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| scale_row_to_integers(r)).collect();
    rank(&IntMatrix::from_rows(int_rows))
}

/// Clear denominators of a rational vector (rank-preserving row scaling).
pub fn scale_row_to_integers(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for r in row {
        lcm = num_integer::lcm(lcm, r.denom().clone());
    }
    row.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

/// Scale a rational vector to a primitive integer vector with positive
/// leading entry. Returns `None` for the zero vector.
pub fn primitive_integer_vector(row: &[BigRational]) -> Option<(Vec<BigInt>, BigRational)> {
    if row.iter().all(|r| r.is_zero()) {
        return None;
    }
    let ints = scale_row_to_integers(row);
    let mut g = BigInt::zero();
    for v in &ints {
        g = num_integer::gcd(g, v.clone());
    }
    let mut prim: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
    let mut flipped = false;
    if let Some(first) = prim.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            flipped = true;
        }
    }
    if flipped {
        for v in prim.iter_mut() {
            *v = -v.clone();
        }
    }
    // scalar with row = scalar * prim
    let idx = prim.iter().position(|v| !v.is_zero()).expect("nonzero");
    let scalar = &row[idx] / BigRational::from_integer(prim[idx].clone());
    Some((prim, scalar))
}

/// Determinant of a numeric matrix by Gaussian elimination with partial
/// pivoting at `precision + 10` working digits.
pub fn numeric_det(mut m: Vec<Vec<BigDec>>, precision: u32) -> BigDec {
    let n = m.len();
    let scale = precision + 10;
    let mut det = BigDec::one(scale);
    let mut sign = 1i8;
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&a, &b| m[a][k].abs().cmp_val(&m[b][k].abs()))
            .unwrap();
        if m[pivot_row][k].is_zero() {
            return BigDec::zero(scale);
        }
        if pivot_row != k {
            m.swap(k, pivot_row);
            sign = -sign;
        }
        det = det.mul(&m[k][k], scale);
        for i in k + 1..n {
            let f = match m[i][k].div(&m[k][k], scale) {
                Some(f) => f,
                None => return BigDec::zero(scale),
            };
            for j in k..n {
                let d = f.mul(&m[k][j], scale);
                m[i][j] = m[i][j].sub(&d);
            }
        }
    }
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Numeric inverse by Gauss-Jordan with partial pivoting. Pivots below the
/// ambiguity threshold are treated as numerically singular.
pub fn numeric_inverse(mut m: Vec<Vec<BigDec>>, precision: u32) -> Result<Vec<Vec<BigDec>>> {
    let n = m.len();
    let scale = precision + 10;
    let threshold = BigDec::eps(precision.saturating_sub(5), scale);
    let mut inv: Vec<Vec<BigDec>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigDec::one(scale)
                    } else {
                        BigDec::zero(scale)
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&a, &b| m[a][k].abs().cmp_val(&m[b][k].abs()))
            .unwrap();
        if m[pivot_row][k].abs().cmp_val(&threshold) == std::cmp::Ordering::Less {
            return Err(Error::NumericallySingular { precision });
        }
        m.swap(k, pivot_row);
        inv.swap(k, pivot_row);
        let p = m[k][k].clone();
        for j in 0..n {
            m[k][j] = m[k][j].div(&p, scale).expect("pivot nonzero");
            inv[k][j] = inv[k][j].div(&p, scale).expect("pivot nonzero");
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..n {
                let d = f.mul(&m[k][j], scale);
                m[i][j] = m[i][j].sub(&d);
                let d = f.mul(&inv[k][j], scale);
                inv[i][j] = inv[i][j].sub(&d);
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;
    use crate::exact::symbol::SymbolBasis;

    use crate::testutil::{lattice, sym};

    #[test]
    fn rejects_exactly_singular_basis() {
        let b = SymbolBasis::standard();
        // second row is twice the first: exact certificate
        let entries = vec![
            sym(&b, "1"),
            sym(&b, "sqrt3"),
            sym(&b, "2"),
            sym(&b, "2*sqrt3"),
        ];
        match LatticeBasis::new(b, entries, 50) {
            Err(Error::SingularBasis(_)) => {}
            other => panic!("expected SingularBasis, got {:?}", other),
        }
    }

    #[test]
    fn rejects_numerically_singular_basis() {
        let b = SymbolBasis::standard();
        // [[1, 0], [sqrt2, 0]]: coefficient tensors independent but the
        // matrix is singular; caught by the numeric determinant
        let entries = vec![sym(&b, "1"), sym(&b, "0"), sym(&b, "sqrt2"), sym(&b, "0")];
        match LatticeBasis::new(b, entries, 50) {
            Err(Error::AmbiguousSign { .. }) => {}
            other => panic!("expected AmbiguousSign, got {:?}", other),
        }
    }

    #[test]
    fn matvec_reproduces_the_worked_sparse_vector() {
        // A from the worked 3x3 example; A * (0, 2, -1) = (0, 0, 2 sqrt3 - sqrt5)
        let a = lattice(&[
            &["1", "sqrt3", "2*sqrt3"],
            &["sqrt5", "sqrt3", "2*sqrt3"],
            &["sqrt2", "sqrt3", "sqrt5"],
        ]);
        let y = vec![BigInt::from(0), BigInt::from(2), BigInt::from(-1)];
        let x = a.mul_int_vector(&y);
        assert!(x[0].is_zero());
        assert!(x[1].is_zero());
        let b = a.symbol_basis();
        let expect = sym(b, "2*sqrt3 -1*sqrt5");
        assert_eq!(x[2], expect);
    }

    #[test]
    fn numeric_det_and_inverse_agree() {
        let a = lattice(&[&["1", "sqrt3"], &["0", "1"]]);
        let det = a.numeric_det(30).unwrap();
        assert_eq!(det.to_fixed_string(6), "1.000000");
        let inv = a.numeric_inverse(30).unwrap();
        // inverse of [[1, sqrt3],[0,1]] is [[1, -sqrt3],[0,1]]
        assert_eq!(inv[0][1].to_fixed_string(4), "-1.7321");
        assert_eq!(inv[1][0].to_fixed_string(4), "0.0000");
    }

    #[test]
    fn primitive_vector_normalization() {
        let row = vec![
            parse_rational("2/3").unwrap(),
            parse_rational("-4/3").unwrap(),
        ];
        let (prim, scalar) = primitive_integer_vector(&row).unwrap();
        assert_eq!(prim, vec![BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(scalar, parse_rational("2/3").unwrap());
    }
}
