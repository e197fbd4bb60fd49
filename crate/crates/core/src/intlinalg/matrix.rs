//! Arbitrary-precision integer matrices: Hermite normal form by unimodular
//! column operations, saturated integer kernels, determinants and adjugates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        assert!(cols > 0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let r = rows.len();
        IntMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// col_dst -= q * col_src
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) - q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    pub fn is_zero_col(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    /// Max absolute entry (the matrix sup-norm).
    pub fn sup_norm(&self) -> BigInt {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>()
            )?;
        }
        write!(f, "]")
    }
}

/// Serialized shape: `{"rows": r, "cols": c, "data": [["..."]]}` with entries
/// as decimal strings.
#[derive(Serialize, Deserialize)]
struct IntMatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = IntMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
                .collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = IntMatrixRepr::deserialize(de)?;
        if repr.rows == 0 || repr.cols == 0 || repr.data.len() != repr.rows {
            return Err(D::Error::custom("bad matrix shape"));
        }
        let mut rows = Vec::with_capacity(repr.rows);
        for row in &repr.data {
            if row.len() != repr.cols {
                return Err(D::Error::custom("ragged matrix row"));
            }
            let parsed: std::result::Result<Vec<BigInt>, _> =
                row.iter().map(|s| s.parse::<BigInt>()).collect();
            rows.push(parsed.map_err(|_| D::Error::custom("non-integer entry"))?);
        }
        Ok(IntMatrix::from_rows(rows))
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(H, U)` with `H = M * U`, `U` unimodular. Pivot columns come
/// first in echelon order (pivot rows strictly increasing), zero columns
/// last. Pivots are positive and the remaining entries of each pivot row are
/// reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut pivot_col = 0usize;
    let mut pivot_rows: Vec<usize> = Vec::new();

    for row in 0..m.rows {
        if pivot_col >= m.cols {
            break;
        }
        // Euclidean elimination across the active columns of this row.
        loop {
            // pick the nonzero entry of smallest absolute value
            let mut best: Option<(usize, BigInt)> = None;
            for j in pivot_col..m.cols {
                let v = h.get(row, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best {
                    Some((_, b)) if *b <= a => {}
                    _ => best = Some((j, a)),
                }
            }
            let (jmin, _) = match best {
                Some(b) => b,
                None => break, // row is zero on active columns
            };
            h.swap_cols(pivot_col, jmin);
            u.swap_cols(pivot_col, jmin);
            let pivot = h.get(row, pivot_col).clone();
            let mut done = true;
            for j in pivot_col + 1..m.cols {
                let v = h.get(row, j).clone();
                if v.is_zero() {
                    continue;
                }
                // round-to-nearest quotient keeps entries small
                let (mut q, r) = v.div_rem(&pivot);
                let r2: BigInt = r.abs() * 2;
                if r2 > pivot.abs() {
                    if (v.sign() == num_bigint::Sign::Minus) ^ (pivot.sign() == num_bigint::Sign::Minus)
                    {
                        q -= 1;
                    } else {
                        q += 1;
                    }
                }
                h.sub_col(j, pivot_col, &q);
                u.sub_col(j, pivot_col, &q);
                if !h.get(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h.get(row, pivot_col).is_zero() {
            if h.get(row, pivot_col).is_negative() {
                h.negate_col(pivot_col);
                u.negate_col(pivot_col);
            }
            pivot_rows.push(row);
            pivot_col += 1;
        }
    }

    // Reduce earlier pivot columns against each pivot.
    for (k, &prow) in pivot_rows.iter().enumerate() {
        let pivot = h.get(prow, k).clone();
        for j in 0..k {
            let v = h.get(prow, j).clone();
            let q = v.div_floor(&pivot);
            h.sub_col(j, k, &q);
            u.sub_col(j, k, &q);
        }
    }

    (h, u)
}

/// Rank over the rationals (= number of HNF pivot columns).
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hnf(m);
    (0..m.cols).filter(|&j| !h.is_zero_col(j)).count()
}

/// Basis of the saturated integer kernel lattice `{v : Mv = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    /// Length of each vector (= source matrix column count).
    pub ambient: usize,
    /// Linearly independent primitive vectors, sign-normalized and sorted.
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// HNF of the basis matrix; two bases of the same kernel lattice agree
    /// here.
    pub fn lattice_fingerprint(&self) -> Option<IntMatrix> {
        if self.vectors.is_empty() {
            return None;
        }
        let m = IntMatrix::from_rows(self.vectors.clone()).transpose();
        let (h, _) = hnf(&m);
        Some(h)
    }
}

/// Sign-normalize (first nonzero entry positive).
pub fn normalize_vector_sign(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// Saturated integer kernel via the zero columns of the HNF transform.
pub fn integer_kernel(m: &IntMatrix) -> KernelBasis {
    let (h, u) = hnf(m);
    let mut vectors: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..m.cols {
        if h.is_zero_col(j) {
            let mut v = u.col(j);
            normalize_vector_sign(&mut v);
            vectors.push(v);
        }
    }
    vectors.sort_by(|a, b| lex_cmp(a, b));
    KernelBasis {
        ambient: m.cols,
        vectors,
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `(adj, det)` with `M * adj == det * I` exactly. Defined for singular `M`
/// as well.
pub fn adjugate_det(m: &IntMatrix) -> (IntMatrix, BigInt) {
    assert_eq!(m.rows, m.cols, "adjugate of a non-square matrix");
    let n = m.rows;
    if n == 1 {
        return (IntMatrix::identity(1), m.get(0, 0).clone());
    }
    let mut adj = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ij = (-1)^(i+j) det(minor_ij); adj = C^T
            let mut minor_rows = Vec::with_capacity(n - 1);
            for r in 0..n {
                if r == i {
                    continue;
                }
                let mut row = Vec::with_capacity(n - 1);
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    row.push(m.get(r, c).clone());
                }
                minor_rows.push(row);
            }
            let mut c = det(&IntMatrix::from_rows(minor_rows));
            if (i + j) % 2 == 1 {
                c = -c;
            }
            adj.set(j, i, c);
        }
    }
    (adj, det(m))
}
