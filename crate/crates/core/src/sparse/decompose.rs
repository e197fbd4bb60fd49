//! Canonical row decomposition `a_i = sum_j alpha_ij f_ij`, rational
//! dimension, and the two irrationality measures `nu` and `mu`.
//!
//! The decomposition of a row is unique only when its rational dimension is
//! one, so a canonical choice is fixed: the integer row lattice spanned by
//! the primitive coefficient columns of the row is put into Hermite normal
//! form, each basis vector is rescaled to a primitive vector with positive
//! leading entry, and the scalars `alpha_ij` are recovered by exact solving.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bigdec::BigDec;
use crate::error::Result;
use crate::exact::symbol::SymReal;
use crate::intlinalg::matrix::{hnf, IntMatrix};
use crate::sparse::lattice::{numeric_inverse, primitive_integer_vector, LatticeBasis};

/// Decomposition data for one row.
#[derive(Clone, Debug)]
pub struct RowDecomp {
    /// Rational dimension of the row.
    pub d: usize,
    /// The irrational scalars, as symbol-basis coordinates.
    pub alphas: Vec<SymReal>,
    /// Primitive integer vectors, one per scalar.
    pub fvecs: Vec<Vec<BigInt>>,
}

/// Canonical decomposition of every row plus the stacked integer matrix.
#[derive(Clone, Debug)]
pub struct RowDecomposition {
    pub rows: Vec<RowDecomp>,
    /// Stacked `(sum d_i) x n` matrix of all `f_ij` in row order.
    pub f_matrix: IntMatrix,
    /// Block offset of each row inside `f_matrix`.
    pub offsets: Vec<usize>,
    /// `d(L) = sum d_i`.
    pub total: usize,
}

impl RowDecomposition {
    /// Stacked submatrix `F(A)_I` for a set of row indices.
    pub fn f_submatrix(&self, index_set: &[usize]) -> Option<IntMatrix> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for &i in index_set {
            for f in &self.rows[i].fvecs {
                rows.push(f.clone());
            }
        }
        if rows.is_empty() {
            None
        } else {
            Some(IntMatrix::from_rows(rows))
        }
    }

    pub fn d_of(&self, index_set: &[usize]) -> usize {
        index_set.iter().map(|&i| self.rows[i].d).sum()
    }
}

/// Canonical decomposition of all rows of `A`.
pub fn row_decompose(a: &LatticeBasis) -> RowDecomposition {
    let n = a.n();
    let m = a.symbol_basis().len();
    let mut rows = Vec::with_capacity(n);
    let mut stacked: Vec<Vec<BigInt>> = Vec::new();
    let mut offsets = Vec::with_capacity(n);

    for i in 0..n {
        offsets.push(stacked.len());
        // coefficient column for each symbol: c_s[j] = coeff of symbol s in A[i][j]
        let mut columns: Vec<(usize, Vec<BigRational>)> = Vec::new();
        for s in 0..m {
            let col: Vec<BigRational> =
                (0..n).map(|j| a.entry(i, j).coeffs()[s].clone()).collect();
            if col.iter().any(|v| !v.is_zero()) {
                columns.push((s, col));
            }
        }
        // primitive integer copies span the canonical row lattice
        let prim_rows: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|(_, col)| primitive_integer_vector(col).expect("nonzero column").0)
            .collect();
        let transposed = IntMatrix::from_rows(prim_rows).transpose();
        let (h, _) = hnf(&transposed);
        let d = (0..h.cols()).filter(|&j| !h.is_zero_col(j)).count();

        // HNF basis vectors, rescaled primitive (positive pivot preserved)
        let mut fvecs: Vec<Vec<BigInt>> = Vec::with_capacity(d);
        for j in 0..d {
            let col = h.col(j);
            let rat: Vec<BigRational> = col
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect();
            let (prim, _) = primitive_integer_vector(&rat).expect("pivot column is nonzero");
            fvecs.push(prim);
        }

        // recover alpha_ij by forward substitution on the pivot coordinates
        let pivots: Vec<usize> = fvecs
            .iter()
            .map(|f| f.iter().position(|v| !v.is_zero()).expect("primitive"))
            .collect();
        let mut alpha_coeffs = vec![vec![BigRational::zero(); m]; d];
        for (s, col) in &columns {
            let mut residue = col.clone();
            for j in 0..d {
                let p = pivots[j];
                let t = &residue[p] / BigRational::from_integer(fvecs[j][p].clone());
                if !t.is_zero() {
                    for idx in 0..n {
                        let delta = &t * BigRational::from_integer(fvecs[j][idx].clone());
                        residue[idx] -= delta;
                    }
                }
                alpha_coeffs[j][*s] = t;
            }
            assert!(
                residue.iter().all(|v| v.is_zero()),
                "coefficient column is outside the span of its canonical basis"
            );
        }
        let alphas: Vec<SymReal> = alpha_coeffs
            .into_iter()
            .map(|c| SymReal::new(a.symbol_basis().clone(), c).expect("length matches"))
            .collect();

        // decomposition identity: sum_j alpha_ij f_ij == a_i, coefficientwise
        for jcol in 0..n {
            let mut acc = SymReal::zero(a.symbol_basis().clone());
            for j in 0..d {
                acc = acc.add(
                    &alphas[j].scale(&BigRational::from_integer(fvecs[j][jcol].clone())),
                );
            }
            assert!(
                acc == *a.entry(i, jcol),
                "row decomposition failed to reassemble entry ({}, {})",
                i,
                jcol
            );
        }

        stacked.extend(fvecs.iter().cloned());
        rows.push(RowDecomp { d, alphas, fvecs });
    }

    let total = rows.iter().map(|r| r.d).sum();
    RowDecomposition {
        rows,
        f_matrix: IntMatrix::from_rows(stacked),
        offsets,
        total,
    }
}

/// Per-row rational dimensions and their sum `d(L)`.
pub fn rational_dimension(a: &LatticeBasis) -> (Vec<usize>, usize) {
    let dec = row_decompose(a);
    let per_row: Vec<usize> = dec.rows.iter().map(|r| r.d).collect();
    (per_row, dec.total)
}

/// The product irrationality measure `nu(L)`.
#[derive(Clone, Debug)]
pub struct NuValue {
    /// Exact per-row scalars when every row has rational dimension one.
    pub alphas: Option<Vec<SymReal>>,
    /// `prod |alpha_i|` numerically (zero when any row needs more than one
    /// irrational direction).
    pub numeric_abs: BigDec,
    pub is_zero: bool,
}

pub fn nu(a: &LatticeBasis, precision: u32) -> Result<NuValue> {
    let dec = row_decompose(a);
    nu_from_decomposition(&dec, precision)
}

pub fn nu_from_decomposition(dec: &RowDecomposition, precision: u32) -> Result<NuValue> {
    if dec.rows.iter().any(|r| r.d > 1) {
        return Ok(NuValue {
            alphas: None,
            numeric_abs: BigDec::zero(precision),
            is_zero: true,
        });
    }
    let scale = precision + 10;
    let mut product = BigDec::one(scale);
    let mut alphas = Vec::with_capacity(dec.rows.len());
    for r in &dec.rows {
        let alpha = &r.alphas[0];
        // certify the scalar is nonzero before taking |.|
        let s = alpha.sign(precision)?;
        debug_assert!(s != 0, "row scalar of a nonsingular basis cannot vanish");
        product = product.mul(&alpha.abs_eval(precision)?, scale);
        alphas.push(alpha.clone());
    }
    Ok(NuValue {
        alphas: Some(alphas),
        numeric_abs: product,
        is_zero: false,
    })
}

/// Numeric estimate of the sup-norm distortion `mu` of the coefficient map.
#[derive(Clone, Debug)]
pub struct MuEstimate {
    /// Indices (into the symbol basis) of the symbols that occur in `A`.
    pub symbol_indices: Vec<usize>,
    /// Number of occurring symbols.
    pub rank: usize,
    /// Max row 1-norm of the coefficient-map matrix: the exact
    /// infinity-to-infinity operator norm, evaluated numerically.
    pub mu: BigDec,
    /// The `(rank * n) x n` matrix of the map in standard coordinates.
    pub phi_matrix: Vec<Vec<BigDec>>,
}

pub fn mu_estimate(a: &LatticeBasis, precision: u32) -> Result<MuEstimate> {
    let n = a.n();
    let m = a.symbol_basis().len();
    let scale = precision + 10;

    let mut symbol_indices = Vec::new();
    for s in 0..m {
        let occurs = (0..n).any(|i| (0..n).any(|j| !a.entry(i, j).coeffs()[s].is_zero()));
        if occurs {
            symbol_indices.push(s);
        }
    }
    let a_inv = numeric_inverse(a.to_numeric(precision)?, precision)?;

    // phi = S * A^-1 where S stacks the per-symbol coefficient blocks
    let mut phi: Vec<Vec<BigDec>> = Vec::with_capacity(symbol_indices.len() * n);
    for &s in &symbol_indices {
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let mut acc = BigDec::zero(scale);
                for (k, inv_row) in a_inv.iter().enumerate() {
                    let coeff = &a.entry(i, k).coeffs()[s];
                    if coeff.is_zero() {
                        continue;
                    }
                    acc = acc.add(&inv_row[c].mul_rational(coeff, scale));
                }
                row.push(acc);
            }
            phi.push(row);
        }
    }

    let mut mu = BigDec::zero(scale);
    for row in &phi {
        let mut l1 = BigDec::zero(scale);
        for v in row {
            l1 = l1.add(&v.abs());
        }
        if l1.cmp_val(&mu) == std::cmp::Ordering::Greater {
            mu = l1;
        }
    }
    Ok(MuEstimate {
        rank: symbol_indices.len(),
        symbol_indices,
        mu,
        phi_matrix: phi,
    })
}

/// `|F(A)|`: max sup-norm over the decomposition vectors.
pub fn f_sup_norm(dec: &RowDecomposition) -> BigInt {
    dec.f_matrix.sup_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{lattice, sym};
    use num_traits::ToPrimitive;

    fn surd_matrix() -> LatticeBasis {
        lattice(&[
            &["1", "sqrt3", "2*sqrt3"],
            &["sqrt5", "sqrt3", "2*sqrt3"],
            &["sqrt2", "sqrt3", "sqrt5"],
        ])
    }

    #[test]
    fn surd_matrix_decomposition_is_canonical() {
        let a = surd_matrix();
        let dec = row_decompose(&a);
        assert_eq!(
            dec.rows.iter().map(|r| r.d).collect::<Vec<_>>(),
            vec![2, 2, 3]
        );
        assert_eq!(dec.total, 7);
        let f = &dec.f_matrix;
        assert_eq!((f.rows(), f.cols()), (7, 3));
        let expect = IntMatrix::from_i64_rows(&[
            vec![1, 0, 0],
            vec![0, 1, 2],
            vec![1, 0, 0],
            vec![0, 1, 2],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ]);
        assert_eq!(*f, expect);
        // alphas of row 1: 1 and sqrt3, in pivot order
        let b = a.symbol_basis();
        assert_eq!(dec.rows[0].alphas[0], sym(b, "1"));
        assert_eq!(dec.rows[0].alphas[1], sym(b, "sqrt3"));
        assert_eq!(dec.rows[1].alphas[0], sym(b, "sqrt5"));
        assert_eq!(dec.rows[2].alphas[0], sym(b, "sqrt2"));
    }

    #[test]
    fn rational_dimension_golden_cases() {
        // diag(pi, 2): d = (1, 1)
        let a = lattice(&[&["pi", "0"], &["0", "2"]]);
        let (per, total) = rational_dimension(&a);
        assert_eq!(per, vec![1, 1]);
        assert_eq!(total, 2);

        // Lambda_1 = [[1, sqrt3],[0,1]]: d = (2, 1), total 3
        let a = lattice(&[&["1", "sqrt3"], &["0", "1"]]);
        let (per, total) = rational_dimension(&a);
        assert_eq!(per, vec![2, 1]);
        assert_eq!(total, 3);

        // Lambda_2 = [[pi, 2pi],[2,1]]: total 2
        let a = lattice(&[&["pi", "2*pi"], &["2", "1"]]);
        assert_eq!(rational_dimension(&a).1, 2);

        // [[1, sqrt2],[sqrt2, -1]]: total 4
        let a = lattice(&[&["1", "sqrt2"], &["sqrt2", "-1"]]);
        assert_eq!(rational_dimension(&a).1, 4);

        // [[sqrt2, 2 sqrt2],[sqrt2, 3 sqrt2]]: total 2
        let a = lattice(&[&["sqrt2", "2*sqrt2"], &["sqrt2", "3*sqrt2"]]);
        assert_eq!(rational_dimension(&a).1, 2);
    }

    #[test]
    fn nu_golden_cases() {
        // Lambda_1: some row has d > 1, so nu = 0
        let a = lattice(&[&["1", "sqrt3"], &["0", "1"]]);
        let v = nu(&a, 50).unwrap();
        assert!(v.is_zero);

        // Lambda_2: alpha list (pi, 1), numeric product ~ 3.14159
        let a = lattice(&[&["pi", "2*pi"], &["2", "1"]]);
        let v = nu(&a, 50).unwrap();
        assert!(!v.is_zero);
        let alphas = v.alphas.unwrap();
        let b = a.symbol_basis();
        assert_eq!(alphas[0], sym(b, "pi"));
        assert_eq!(alphas[1], sym(b, "1"));
        assert_eq!(v.numeric_abs.to_fixed_string(5), "3.14159");
    }

    #[test]
    fn mu_identity_and_diagonal() {
        let a = lattice(&[&["1", "0"], &["0", "1"]]);
        let m = mu_estimate(&a, 50).unwrap();
        assert_eq!(m.rank, 1);
        assert!((m.mu.to_f64() - 1.0).abs() < 1e-30);

        let a = lattice(&[&["2", "0"], &["0", "3"]]);
        let m = mu_estimate(&a, 50).unwrap();
        assert!((m.mu.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn f_coeff_inequality_on_fixtures() {
        // |F(A)| <= mu * |A| numerically on the decomposed fixtures
        for a in [
            surd_matrix(),
            lattice(&[&["1", "sqrt3"], &["0", "1"]]),
            lattice(&[&["pi", "2*pi"], &["2", "1"]]),
        ] {
            let dec = row_decompose(&a);
            let f_norm = f_sup_norm(&dec).to_f64().unwrap();
            let mu = mu_estimate(&a, 50).unwrap().mu.to_f64();
            let a_norm = a.sup_norm(50).unwrap().to_f64();
            assert!(
                f_norm <= mu * a_norm * (1.0 + 1e-10),
                "|F| = {} vs mu |A| = {}",
                f_norm,
                mu * a_norm
            );
        }
    }
}

#[cfg(test)]
mod invariance_tests {
    use super::*;
    use crate::sparse::lattice::LatticeBasis;
    use crate::testutil::lattice;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Random unimodular matrix as a product of elementary column operations.
    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> crate::intlinalg::matrix::IntMatrix {
        use crate::intlinalg::matrix::IntMatrix;
        let mut u = IntMatrix::identity(n);
        for _ in 0..8 {
            let i = rng.gen_range(0..n);
            let j = loop {
                let j = rng.gen_range(0..n);
                if j != i {
                    break j;
                }
            };
            let c = BigInt::from(rng.gen_range(-3i64..=3));
            // col_j += c * col_i
            let mut e = IntMatrix::identity(n);
            e.set(i, j, c);
            u = u.mul(&e);
        }
        u
    }

    #[test]
    fn d_and_nu_are_basis_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let fixtures = [
            lattice(&[&["pi", "2*pi"], &["2", "1"]]),
            lattice(&[&["1", "sqrt3"], &["0", "1"]]),
            lattice(&[&["sqrt2", "0"], &["0", "sqrt5"]]),
        ];
        for a in &fixtures {
            let (_, d_before) = rational_dimension(a);
            let nu_before = nu(a, 50).unwrap();
            for _ in 0..5 {
                let u = random_unimodular(&mut rng, a.n());
                let cols = a.mul_int_matrix(&u);
                // rebuild a LatticeBasis with rows from A * U
                let mut entries = Vec::with_capacity(a.n() * a.n());
                for row in &cols {
                    entries.extend(row.iter().cloned());
                }
                let changed =
                    LatticeBasis::new(a.symbol_basis().clone(), entries, 50).unwrap();
                let (_, d_after) = rational_dimension(&changed);
                assert_eq!(d_before, d_after, "rational dimension must be basis-free");
                let nu_after = nu(&changed, 50).unwrap();
                assert_eq!(nu_before.is_zero, nu_after.is_zero);
                if !nu_before.is_zero {
                    let diff = nu_before.numeric_abs.sub(&nu_after.numeric_abs).abs();
                    let tol = crate::bigdec::BigDec::eps(40, 60);
                    assert!(
                        diff.cmp_val(&tol) != std::cmp::Ordering::Greater,
                        "nu must be basis-free"
                    );
                }
            }
        }
    }
}
