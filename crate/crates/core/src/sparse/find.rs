//! Construction of sparse lattice vectors from low-rational-dimension row
//! subsets, with a verified sup-norm product bound.

use num_bigint::BigInt;


use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::exact::symbol::SymReal;
use crate::intlinalg::lll::reduce_kernel_basis;
use crate::intlinalg::matrix::integer_kernel;
use crate::sparse::decompose::{mu_estimate, row_decompose, RowDecomposition};
use crate::sparse::lattice::LatticeBasis;

/// One qualifying index set `I` and the sparse vectors it produces.
#[derive(Clone, Debug)]
pub struct SparseReport {
    /// Row indices (0-based, sorted ascending) with `d_I(A) < n`.
    pub index_set: Vec<usize>,
    pub d_i: usize,
    /// Number of vectors produced: `n - d_I(A)`.
    pub ell: usize,
    /// Integer preimages, sorted by sup-norm then lexicographically.
    pub preimages: Vec<Vec<BigInt>>,
    /// The lattice vectors `A * y`, exactly.
    pub vectors: Vec<Vec<SymReal>>,
    /// Exact sparsity level of each vector.
    pub zero_norms: Vec<usize>,
    /// Numeric sup-norms of the vectors.
    pub sup_norms: Vec<BigDec>,
    /// Product of the sup-norms.
    pub product: BigDec,
    /// The bound `n^(n - d_I/2) * |A|^n * mu^d_I`, numerically.
    pub bound: BigDec,
    pub bound_satisfied: bool,
    /// Working precision the numeric fields were computed at.
    pub precision: u32,
}

/// Subsets of `{0..n-1}` with `size` elements, in colexicographic order.
pub fn subsets_colex(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    if size > n {
        return out;
    }
    // colex: ordered by largest element, then recursively
    fn rec(max: usize, size: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if size == 0 {
            let mut s = acc.clone();
            s.reverse();
            out.push(s);
            return;
        }
        for top in (size - 1)..max {
            acc.push(top);
            rec(top, size - 1, acc, out);
            acc.pop();
        }
    }
    let mut acc = Vec::new();
    rec(n, size, &mut acc, &mut out);
    out
}

fn exact_zero_norm(x: &[SymReal]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

fn sup_norm_numeric(x: &[SymReal], precision: u32) -> Result<BigDec> {
    let mut best = BigDec::zero(precision);
    for v in x {
        let a = v.abs_eval(precision)?;
        if a.cmp_val(&best) == std::cmp::Ordering::Greater {
            best = a;
        }
    }
    Ok(best)
}

/// Right-hand side of the sparse successive-minima bound:
/// `n^(n - d_I/2) * |A|^n * mu^(d_I)` (the half power is taken as an exact
/// square root of an integer power).
fn bound_value(
    n: usize,
    d_i: usize,
    a_norm: &BigDec,
    mu: &BigDec,
    precision: u32,
) -> BigDec {
    let scale = precision + 10;
    let n_pow = BigDec::from_int(n as i64, scale).pow_usize(2 * n - d_i, scale);
    let root = n_pow.sqrt(scale).expect("positive");
    root.mul(&a_norm.pow_usize(n, scale), scale)
        .mul(&mu.pow_usize(d_i, scale), scale)
}

fn bound_check(lhs: &BigDec, rhs: &BigDec) -> bool {
    // lhs <= rhs * (1 + 1e-15)
    let scale = rhs.scale();
    let slack = rhs.mul(&BigDec::eps(15, scale), scale);
    lhs.cmp_val(&rhs.add(&slack)) != std::cmp::Ordering::Greater
}

/// Enumerate all index sets `I` of size `n - k` with `d_I(A) < n` and return
/// the sparse vectors of each, sorted by `d_I` then lexicographic `I`.
pub fn find_sparse(a: &LatticeBasis, k: usize, precision: u32) -> Result<Vec<SparseReport>> {
    let n = a.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "k must satisfy 1 <= k < n = {}, got {}",
            n, k
        )));
    }
    let dec = row_decompose(a);
    let mu = mu_estimate(a, precision)?;
    let a_norm = a.sup_norm(precision)?;

    let mut reports = Vec::new();
    for index_set in subsets_colex(n, n - k) {
        // early pruning: partial sums of d_i reach n
        let mut d_i = 0usize;
        let mut pruned = false;
        for &i in &index_set {
            d_i += dec.rows[i].d;
            if d_i >= n {
                pruned = true;
                break;
            }
        }
        if pruned {
            continue;
        }
        reports.push(report_for_subset(
            a, &dec, &index_set, d_i, &a_norm, &mu.mu, precision,
        )?);
    }
    reports.sort_by(|x, y| x.d_i.cmp(&y.d_i).then_with(|| x.index_set.cmp(&y.index_set)));
    Ok(reports)
}

fn report_for_subset(
    a: &LatticeBasis,
    dec: &RowDecomposition,
    index_set: &[usize],
    d_i: usize,
    a_norm: &BigDec,
    mu: &BigDec,
    precision: u32,
) -> Result<SparseReport> {
    let n = a.n();
    let ell = n - d_i;
    let f_sub = dec
        .f_submatrix(index_set)
        .expect("qualifying index set is nonempty");
    let kernel = integer_kernel(&f_sub);
    debug_assert!(kernel.dimension() >= ell);
    let reduced = reduce_kernel_basis(&kernel, None);
    let preimages: Vec<Vec<BigInt>> = reduced.basis.vectors.into_iter().take(ell).collect();

    let mut vectors = Vec::with_capacity(ell);
    let mut zero_norms = Vec::with_capacity(ell);
    let mut sup_norms = Vec::with_capacity(ell);
    let scale = precision + 10;
    let mut product = BigDec::one(scale);
    for y in &preimages {
        let x = a.mul_int_vector(y);
        let z = exact_zero_norm(&x);
        let s = sup_norm_numeric(&x, precision)?;
        product = product.mul(&s, scale);
        vectors.push(x);
        zero_norms.push(z);
        sup_norms.push(s);
    }
    let bound = bound_value(n, d_i, a_norm, mu, precision);
    let bound_satisfied = bound_check(&product, &bound);
    Ok(SparseReport {
        index_set: index_set.to_vec(),
        d_i,
        ell,
        preimages,
        vectors,
        zero_norms,
        sup_norms,
        product,
        bound,
        bound_satisfied,
        precision,
    })
}

/// Recompute both sides of the bound at doubled precision.
pub fn verify_thm1_instance(a: &LatticeBasis, report: &SparseReport) -> Result<bool> {
    if report.ell == 0 {
        return Ok(true);
    }
    let precision = report.precision * 2;
    let mu = mu_estimate(a, precision)?;
    let a_norm = a.sup_norm(precision)?;
    let scale = precision + 10;
    let mut product = BigDec::one(scale);
    for y in &report.preimages {
        let x = a.mul_int_vector(y);
        product = product.mul(&sup_norm_numeric(&x, precision)?, scale);
    }
    let bound = bound_value(a.n(), report.d_i, &a_norm, &mu.mu, precision);
    Ok(bound_check(&product, &bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{lattice, sym};

    fn surd_matrix() -> LatticeBasis {
        lattice(&[
            &["1", "sqrt3", "2*sqrt3"],
            &["sqrt5", "sqrt3", "2*sqrt3"],
            &["sqrt2", "sqrt3", "sqrt5"],
        ])
    }

    #[test]
    fn colex_order_is_deterministic() {
        assert_eq!(
            subsets_colex(3, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(subsets_colex(4, 1), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(subsets_colex(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn surd_matrix_k1_has_no_qualifying_subset() {
        let a = surd_matrix();
        let reports = find_sparse(&a, 1, 50).unwrap();
        assert!(reports.is_empty(), "every d_I >= 4 > n = 3");
    }

    #[test]
    fn surd_matrix_k2_recovers_the_sparse_vector() {
        let a = surd_matrix();
        let reports = find_sparse(&a, 2, 50).unwrap();
        // I = {0} and I = {1} qualify with d_I = 2
        assert_eq!(reports.len(), 2);
        for rep in &reports {
            assert_eq!(rep.d_i, 2);
            assert_eq!(rep.ell, 1);
            assert_eq!(
                rep.preimages[0],
                vec![BigInt::from(0), BigInt::from(2), BigInt::from(-1)]
            );
            let b = a.symbol_basis();
            assert!(rep.vectors[0][0].is_zero());
            assert!(rep.vectors[0][1].is_zero());
            assert_eq!(rep.vectors[0][2], sym(b, "2*sqrt3 -1*sqrt5"));
            assert!(rep.zero_norms[0] <= 2);
            assert!(rep.bound_satisfied);
            assert!(verify_thm1_instance(&a, rep).unwrap());
        }
        assert_eq!(reports[0].index_set, vec![0]);
        assert_eq!(reports[1].index_set, vec![1]);
    }

    #[test]
    fn lambda1_k1_finds_the_axis_vector() {
        let a = lattice(&[&["1", "sqrt3"], &["0", "1"]]);
        let reports = find_sparse(&a, 1, 50).unwrap();
        // I = {0}: d = 2 >= n fails; I = {1}: d = 1 < 2
        assert_eq!(reports.len(), 1);
        let rep = &reports[0];
        assert_eq!(rep.index_set, vec![1]);
        assert_eq!(rep.ell, 1);
        assert_eq!(rep.preimages[0], vec![BigInt::from(1), BigInt::from(0)]);
        let b = a.symbol_basis();
        assert_eq!(rep.vectors[0][0], sym(b, "1"));
        assert!(rep.vectors[0][1].is_zero());
        assert!(rep.bound_satisfied);
        assert!(verify_thm1_instance(&a, rep).unwrap());
    }
}
