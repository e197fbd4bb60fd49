//! Brute-force oracle for the k-sparse successive minima inside a sup-norm
//! box. Exact sparsity tests, numeric norms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::exact::symbol::SymReal;
use crate::sparse::lattice::{scale_row_to_integers, LatticeBasis};
use crate::sparse::levels::RationalEchelon;

pub const MINIMA_DIMENSION_CAP: usize = 8;
pub const DEFAULT_NODE_BUDGET: u128 = 20_000_000;

#[derive(Clone, Debug)]
pub struct MinimaResult {
    /// Successive k-sparse minima found inside the box, ascending.
    pub minima: Vec<BigDec>,
    pub preimages: Vec<Vec<BigInt>>,
    pub witnesses: Vec<Vec<SymReal>>,
    pub zero_norms: Vec<usize>,
    /// False when fewer than `n` independent k-sparse vectors were found;
    /// further minima may exist beyond the radius.
    pub complete: bool,
    /// Half-width of the integer preimage box that was enumerated.
    pub box_half_width: BigInt,
}

/// Enumerate lattice vectors with at most `k` nonzero coordinates and
/// sup-norm at most `radius`, and extract successive minima greedily.
pub fn sparse_minima_oracle(
    a: &LatticeBasis,
    k: usize,
    radius: &BigRational,
    precision: u32,
    node_budget: u128,
) -> Result<MinimaResult> {
    let n = a.n();
    if n > MINIMA_DIMENSION_CAP {
        return Err(Error::DimensionCapExceeded {
            n,
            cap: MINIMA_DIMENSION_CAP,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k must satisfy 1 <= k <= n = {}, got {}",
            n, k
        )));
    }
    if !radius.is_positive() {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    let scale = precision + 10;

    // box bound on preimages: |y| <= ceil(radius * n * |A^-1|_inf)
    let inv_norm = a.inverse_inf_norm(precision)?;
    let radius_bd = BigDec::from_rational(radius, scale);
    let y_bound = radius_bd
        .mul(&BigDec::from_int(n as i64, 0), scale)
        .mul(&inv_norm, scale)
        .ceil_int()
        .max(BigInt::one());

    let width: BigInt = &y_bound * 2 + 1;
    let mut nodes: u128 = 1;
    for _ in 0..n {
        nodes = nodes.saturating_mul(u128::try_from(width.clone()).unwrap_or(u128::MAX));
        if nodes > node_budget {
            return Err(Error::BoxTooLarge {
                nodes,
                budget: node_budget,
            });
        }
    }

    // integer tests for exact coordinate vanishing: coordinate i of A*y is
    // zero iff every per-symbol scaled row annihilates y
    let m = a.symbol_basis().len();
    let mut coord_rows: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rows = Vec::new();
        for s in 0..m {
            let row: Vec<BigRational> =
                (0..n).map(|j| a.entry(i, j).coeffs()[s].clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(scale_row_to_integers(&row));
            }
        }
        coord_rows.push(rows);
    }
    let numeric = a.to_numeric(precision)?;
    let slack = BigDec::eps(precision.saturating_sub(5), scale);
    let radius_with_slack = radius_bd.add(&slack);

    let mut found: Vec<(BigDec, Vec<BigInt>)> = Vec::new();
    let mut y = vec![-y_bound.clone(); n];
    'enumerate: loop {
        if !y.iter().all(|v| v.is_zero()) {
            // canonical sign representative: first nonzero entry positive
            let canonical = y
                .iter()
                .find(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .unwrap_or(false);
            if canonical {
                let zero_norm = (0..n)
                    .filter(|&i| {
                        coord_rows[i]
                            .iter()
                            .any(|row| !dot(row, &y).is_zero())
                    })
                    .count();
                if zero_norm <= k && zero_norm > 0 {
                    let mut sup = BigDec::zero(scale);
                    for row in &numeric {
                        let mut acc = BigDec::zero(scale);
                        for (c, v) in row.iter().zip(&y) {
                            if v.is_zero() {
                                continue;
                            }
                            acc = acc.add(&c.mul_int(v));
                        }
                        let acc = acc.abs();
                        if acc.cmp_val(&sup) == std::cmp::Ordering::Greater {
                            sup = acc;
                        }
                    }
                    if sup.cmp_val(&radius_with_slack) != std::cmp::Ordering::Greater {
                        found.push((sup, y.clone()));
                    }
                }
            }
        }
        // odometer
        for i in (0..n).rev() {
            if y[i] < y_bound {
                y[i] += 1;
                continue 'enumerate;
            }
            y[i] = -y_bound.clone();
        }
        break;
    }

    found.sort_by(|a, b| a.0.cmp_val(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut ech = RationalEchelon::new(n);
    let mut minima = Vec::new();
    let mut preimages = Vec::new();
    for (sup, y) in &found {
        if minima.len() == n {
            break;
        }
        if ech.insert_int(y) {
            minima.push(sup.clone());
            preimages.push(y.clone());
        }
    }
    let witnesses: Vec<Vec<SymReal>> = preimages.iter().map(|y| a.mul_int_vector(y)).collect();
    let zero_norms: Vec<usize> = witnesses
        .iter()
        .map(|x| x.iter().filter(|v| !v.is_zero()).count())
        .collect();
    let complete = minima.len() == n;
    Ok(MinimaResult {
        minima,
        preimages,
        witnesses,
        zero_norms,
        complete,
        box_half_width: y_bound,
    })
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::lattice;

    fn rational(s: &str) -> BigRational {
        crate::exact::rational::parse_rational(s).unwrap()
    }

    #[test]
    fn unit_lattice_minima_are_one() {
        let a = lattice(&[&["1", "0"], &["0", "1"]]);
        let r = sparse_minima_oracle(&a, 1, &rational("2"), 40, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.complete);
        assert_eq!(r.minima.len(), 2);
        assert_eq!(r.minima[0].to_fixed_string(6), "1.000000");
        assert_eq!(r.minima[1].to_fixed_string(6), "1.000000");
    }

    #[test]
    fn lambda1_has_single_one_sparse_minimum() {
        let a = lattice(&[&["1", "sqrt3"], &["0", "1"]]);
        let r = sparse_minima_oracle(&a, 1, &rational("3"), 40, DEFAULT_NODE_BUDGET).unwrap();
        assert!(!r.complete, "no second 1-sparse minimum exists");
        assert_eq!(r.minima.len(), 1);
        assert_eq!(r.minima[0].to_fixed_string(6), "1.000000");
        assert_eq!(r.zero_norms, vec![1]);
    }

    #[test]
    fn lambda2_first_minimum_is_three() {
        let a = lattice(&[&["pi", "2*pi"], &["2", "1"]]);
        let r = sparse_minima_oracle(&a, 1, &rational("10"), 40, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.complete);
        assert_eq!(r.minima[0].to_fixed_string(6), "3.000000");
        // second minimum is |(-3 pi, 0)| = 3 pi
        assert_eq!(r.minima[1].to_fixed_string(5), "9.42478");
    }

    #[test]
    fn budget_is_enforced() {
        let a = lattice(&[&["1", "0"], &["0", "1"]]);
        assert!(matches!(
            sparse_minima_oracle(&a, 1, &rational("100"), 40, 10),
            Err(Error::BoxTooLarge { .. })
        ));
    }
}
