//! Kernel-basis size reduction and the small-solution sup-norm bound.
//!
//! `reduce_kernel_basis` runs LLL (delta = 3/4, Euclidean Gram) over the
//! exact rationals and then orders the result deterministically. The
//! sup-norm product bound `(sqrt(n) |B|)^m` is checked exactly by comparing
//! squares; `siegel_witness_search` is the exhaustive fallback that looks for
//! independent short kernel vectors when the reduced basis misses the bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{normalize_vector_sign, IntMatrix, KernelBasis};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_rational(r: &BigRational) -> BigInt {
    let (q, rem) = r.numer().div_rem(r.denom());
    let two_rem: BigInt = rem.abs() * 2;
    if two_rem >= r.denom().abs() {
        if r.numer().is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Gram-Schmidt data over the rationals: `mu[i][j]` for `j < i` and the
/// squared norms of the orthogonalized vectors.
fn gso(basis: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let ell = basis.len();
    let n = basis[0].len();
    let mut mu = vec![vec![BigRational::zero(); ell]; ell];
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(ell);
    let mut norms = vec![BigRational::zero(); ell];
    for i in 0..ell {
        let mut v: Vec<BigRational> = basis[i]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            let num: BigRational = basis[i]
                .iter()
                .zip(&bstar[j])
                .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
                .sum();
            let m = &num / &norms[j];
            for t in 0..n {
                let d = &m * &bstar[j][t];
                v[t] -= d;
            }
            mu[i][j] = m;
        }
        norms[i] = v.iter().map(|x| x * x).sum();
        bstar.push(v);
    }
    (mu, norms)
}

/// In-place LLL with delta = 3/4 on linearly independent integer vectors.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let ell = basis.len();
    if ell <= 1 {
        return;
    }
    let n = basis[0].len();
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1usize;
    while k < ell {
        let (mu, _) = gso(basis);
        for j in (0..k).rev() {
            let r = round_rational(&mu[k][j]);
            if !r.is_zero() {
                for t in 0..n {
                    let d = &r * &basis[j][t];
                    basis[k][t] -= d;
                }
            }
        }
        let (mu, norms) = gso(basis);
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= lovasz {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
}

fn sup_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
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

/// Result of [`reduce_kernel_basis`].
#[derive(Clone, Debug)]
pub struct ReducedKernel {
    pub basis: KernelBasis,
    /// Product of the sup-norms of the basis vectors (1 for an empty basis).
    pub product_sup_norm: BigInt,
    /// Whether the product meets the supplied target bound, when one was
    /// given.
    pub bound_ok: Option<bool>,
}

/// Size-reduce a kernel basis. The output spans the same kernel lattice; the
/// vectors are sign-normalized (first nonzero entry positive) and sorted by
/// sup-norm, then lexicographically.
pub fn reduce_kernel_basis(kernel: &KernelBasis, target: Option<&BigRational>) -> ReducedKernel {
    let mut vectors = kernel.vectors.clone();
    lll_reduce(&mut vectors);
    for v in vectors.iter_mut() {
        normalize_vector_sign(v);
    }
    vectors.sort_by(|a, b| sup_norm(a).cmp(&sup_norm(b)).then_with(|| lex_cmp(a, b)));
    let product = vectors
        .iter()
        .map(|v| sup_norm(v))
        .fold(BigInt::one(), |acc, s| acc * s);
    let bound_ok = target.map(|t| BigRational::from_integer(product.clone()) <= *t);
    ReducedKernel {
        basis: KernelBasis {
            ambient: kernel.ambient,
            vectors,
        },
        product_sup_norm: product,
        bound_ok,
    }
}

/// Exact check of `prod |z_i| <= (sqrt(n) |B|)^m`, by squaring both sides.
pub fn siegel_bound_holds(vectors: &[Vec<BigInt>], n: usize, m: usize, sup_b: &BigInt) -> bool {
    let product = vectors
        .iter()
        .map(|v| sup_norm(v))
        .fold(BigInt::one(), |acc, s| acc * s);
    let lhs = &product * &product;
    let rhs = BigInt::from(n).pow(m as u32) * sup_b.pow(2 * m as u32);
    lhs <= rhs
}

/// Exact rational inverse of a small square matrix by Gauss-Jordan.
/// Returns `None` when singular.
fn rational_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let d = &f * &a[col][j];
                a[r][j] -= d;
                let d = &f * &inv[col][j];
                inv[r][j] -= d;
            }
        }
    }
    Some(inv)
}

/// Row 1-norms of the pseudo-inverse of the column matrix of `basis`. For a
/// lattice vector `x = sum c_i b_i`, they bound `|c_i| <= norm_i * |x|_sup`.
fn coefficient_bounds(basis: &[Vec<BigInt>]) -> Option<Vec<BigRational>> {
    let ell = basis.len();
    let gram: Vec<Vec<BigRational>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| BigRational::from_integer(dot(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let gram_inv = rational_inverse(&gram)?;
    // P = G^-1 * B^T; row i of P has entries sum_j Ginv[i][j] * basis[j][t]
    let n = basis[0].len();
    let mut norms = Vec::with_capacity(ell);
    for ginv_row in gram_inv.iter().take(ell) {
        let mut norm = BigRational::zero();
        for t in 0..n {
            let mut entry = BigRational::zero();
            for (j, basis_j) in basis.iter().enumerate() {
                entry += &ginv_row[j] * BigRational::from_integer(basis_j[t].clone());
            }
            norm += entry.abs();
        }
        norms.push(norm);
    }
    Some(norms)
}

fn rational_floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Exhaustive search for `dim` linearly independent kernel-lattice vectors
/// whose squared sup-norm product meets `bound_sq`. Enumerates coefficient
/// boxes in growing sup-norm shells; deterministic.
pub fn siegel_witness_search(
    kernel: &KernelBasis,
    bound_sq: &BigInt,
    node_budget: u64,
) -> Option<Vec<Vec<BigInt>>> {
    let ell = kernel.dimension();
    if ell == 0 {
        return Some(Vec::new());
    }
    let basis = &kernel.vectors;
    let coeff_norms = coefficient_bounds(basis)?;
    let max_radius = bound_sq.sqrt().max(BigInt::one());

    let mut radius = BigInt::one();
    loop {
        // coefficient box for sup-norm <= radius
        let limits: Vec<BigInt> = coeff_norms
            .iter()
            .map(|nm| rational_floor(&(nm * BigRational::from_integer(radius.clone()))))
            .collect();
        let mut nodes: u64 = 1;
        for l in &limits {
            let width = (l * 2u32 + 1u32).try_into().unwrap_or(u64::MAX);
            nodes = nodes.saturating_mul(width);
        }
        if nodes <= node_budget {
            let mut found: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
            let mut coeff = vec![BigInt::zero(); ell];
            enumerate_box(&limits, 0, &mut coeff, &mut |c| {
                if c.iter().all(|x| x.is_zero()) {
                    return;
                }
                // canonical sign: first nonzero coefficient positive
                if c.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()) == Some(true) {
                    return;
                }
                let n = basis[0].len();
                let mut v = vec![BigInt::zero(); n];
                for (ci, b) in c.iter().zip(basis) {
                    if ci.is_zero() {
                        continue;
                    }
                    for t in 0..n {
                        v[t] += ci * &b[t];
                    }
                }
                let s = sup_norm(&v);
                if !s.is_zero() && s <= radius {
                    found.push((s, v));
                }
            });
            found.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| lex_cmp(&a.1, &b.1)));
            // greedy independent selection
            let mut chosen: Vec<Vec<BigInt>> = Vec::new();
            for (_, v) in &found {
                if chosen.len() == ell {
                    break;
                }
                let mut candidate = chosen.clone();
                candidate.push(v.clone());
                if integer_rank(&candidate) == candidate.len() {
                    chosen.push(v.clone());
                }
            }
            if chosen.len() == ell {
                let product = chosen
                    .iter()
                    .map(|v| sup_norm(v))
                    .fold(BigInt::one(), |acc, s| acc * s);
                if &product * &product <= *bound_sq {
                    return Some(chosen);
                }
                return None; // minima themselves exceed the bound
            }
        }
        if radius >= max_radius {
            return None;
        }
        radius = (radius * 2u32).min(max_radius.clone());
    }
}

fn enumerate_box(
    limits: &[BigInt],
    idx: usize,
    coeff: &mut Vec<BigInt>,
    visit: &mut impl FnMut(&[BigInt]),
) {
    if idx == limits.len() {
        visit(coeff);
        return;
    }
    let lim = limits[idx].clone();
    let mut c = -lim.clone();
    while c <= lim {
        coeff[idx] = c.clone();
        enumerate_box(limits, idx + 1, coeff, visit);
        c += 1;
    }
}

fn integer_rank(vectors: &[Vec<BigInt>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    super::matrix::rank(&IntMatrix::from_rows(vectors.to_vec()))
}
