//! Property suites for the exact layers: rational canonical form, symbol
//! arithmetic linearity, quadratic-field sign agreement, and the integer
//! linear algebra invariants on batches of random matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sgon_core::bigdec::BigDec;
use sgon_core::exact::quad::QuadNum;
use sgon_core::exact::symbol::{SymReal, SymbolBasis};
use sgon_core::intlinalg::lll::reduce_kernel_basis;
use sgon_core::intlinalg::matrix::{det, hnf, integer_kernel, IntMatrix};

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #[test]
    fn rational_canonical_form(n in -1000i64..1000, d in 1i64..1000) {
        let r = rational(n, d);
        prop_assert!(r.denom().is_positive());
        prop_assert!(num_integer::gcd(r.numer().clone(), r.denom().clone()).abs() <= BigInt::one());
    }

    #[test]
    fn rational_ring_laws(
        a in (-50i64..50, 1i64..20),
        b in (-50i64..50, 1i64..20),
        c in (-50i64..50, 1i64..20),
    ) {
        let (a, b, c) = (rational(a.0, a.1), rational(b.0, b.1), rational(c.0, c.1));
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn symreal_eval_is_linear(
        c1 in (-20i64..20, 1i64..8),
        c2 in (-20i64..20, 1i64..8),
        s1 in 0usize..6,
        s2 in 0usize..6,
    ) {
        let basis = SymbolBasis::standard();
        let x = SymReal::from_symbol(basis.clone(), s1, rational(c1.0, c1.1));
        let y = SymReal::from_symbol(basis.clone(), s2, rational(c2.0, c2.1));
        let sum = x.add(&y);
        let precision = 30u32;
        let lhs = sum.eval(precision).unwrap();
        let rhs = x.eval(precision).unwrap().add(&y.eval(precision).unwrap());
        let diff = lhs.sub(&rhs).abs();
        prop_assert!(diff.cmp_val(&BigDec::eps(precision - 2, lhs.scale())) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn quad_inverse_is_exact(
        p in (-30i64..30, 1i64..10),
        q in (-30i64..30, 1i64..10),
        d in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
    ) {
        let x = QuadNum::new(rational(p.0, p.1), rational(q.0, q.1), d).unwrap();
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert_eq!(x.mul(&inv), QuadNum::one());
    }
}

#[test]
fn quad_sign_agrees_with_numeric_eval() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let d = [2u64, 3, 5, 7, 11, 13][rng.gen_range(0..6)];
        let p = rational(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=9));
        let q = rational(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=9));
        let x = QuadNum::new(p.clone(), q.clone(), d).unwrap();
        // numeric route through a symbol basis {1, sqrt(D)}
        let approx = BigDec::from_int(d as i64, 110)
            .sqrt(110)
            .unwrap()
            .to_fixed_string(110);
        let basis = SymbolBasis::new(vec![(format!("sqrt{}", d), approx)]).unwrap();
        let v = SymReal::new(basis, vec![p, q]).unwrap();
        match v.sign(50) {
            Ok(s) => assert_eq!(s, x.sign(), "disagreement for {}", x),
            Err(_) => assert_eq!(x.sign(), 0, "ambiguous numeric sign must mean exact zero"),
        }
    }
}

#[test]
fn hnf_invariants_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for _ in 0..500 {
        let r = rng.gen_range(1..=6usize);
        let c = rng.gen_range(1..=6usize);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-50i64..=50)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&rows);
        let (h, u) = hnf(&m);
        assert_eq!(m.mul(&u), h, "H = M U must hold exactly");
        assert_eq!(det(&u).abs(), BigInt::one(), "U must be unimodular");

        // echelon structure: pivot rows strictly increase, zero columns last
        let mut last_pivot_row: Option<usize> = None;
        let mut seen_zero_col = false;
        for j in 0..h.cols() {
            let pivot_row = (0..h.rows()).find(|&i| !h.get(i, j).is_zero());
            match pivot_row {
                Some(pr) => {
                    assert!(!seen_zero_col, "pivot column after a zero column");
                    if let Some(last) = last_pivot_row {
                        assert!(pr > last, "pivot rows must strictly increase");
                    }
                    assert!(h.get(pr, j).is_positive(), "pivots must be positive");
                    last_pivot_row = Some(pr);
                }
                None => seen_zero_col = true,
            }
        }
    }
}

#[test]
fn kernel_saturation_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut nontrivial = 0;
    for _ in 0..300 {
        let r = rng.gen_range(1..=4usize);
        let c = rng.gen_range(2..=6usize);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-10i64..=10)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&rows);
        let kernel = integer_kernel(&m);
        for v in &kernel.vectors {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        if kernel.dimension() == 0 {
            continue;
        }
        nontrivial += 1;

        // saturation: any primitive integer vector of the rational kernel
        // must solve integrally over the basis
        let probe = random_rational_kernel_vector(&m, &mut rng);
        if let Some(probe) = probe {
            let coords = solve_over_basis(&kernel.vectors, &probe);
            let coords = coords.expect("probe lies in the kernel space");
            for co in coords {
                assert!(co.denom().is_one(), "kernel basis is not saturated");
            }
        }

        // reduction preserves the kernel lattice
        let reduced = reduce_kernel_basis(&kernel, None);
        assert_eq!(
            reduced.basis.lattice_fingerprint(),
            kernel.lattice_fingerprint()
        );
    }
    assert!(nontrivial > 50, "battery needs nontrivial kernels to be meaningful");
}

/// A primitive integer vector in the rational kernel of `m`, built from a
/// random rational combination of a rational elimination basis.
fn random_rational_kernel_vector(m: &IntMatrix, rng: &mut ChaCha8Rng) -> Option<Vec<BigInt>> {
    let kernel = integer_kernel(m);
    if kernel.dimension() == 0 {
        return None;
    }
    // random rational combo, then clear denominators and divide by the gcd
    let mut acc = vec![BigRational::zero(); kernel.ambient];
    for v in &kernel.vectors {
        let coeff = rational(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4));
        for (a, x) in acc.iter_mut().zip(v) {
            *a += &coeff * BigRational::from_integer(x.clone());
        }
    }
    if acc.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in &acc {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = acc.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::gcd(g, x.clone());
    }
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Solve `sum c_i basis_i = target` over the rationals.
fn solve_over_basis(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = target.len();
    // Gaussian elimination on the k x (k+1) normal system would need a Gram
    // matrix; instead eliminate directly on the n x (k+1) system
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[i].clone()))
                .collect();
            row.push(BigRational::from_integer(target[i].clone()));
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0usize;
    for col in 0..k {
        let pr = (row..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(row, pr);
        let p = aug[row][col].clone();
        for x in aug[row].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for cidx in 0..=k {
                    let d = &f * &aug[row][cidx];
                    aug[r][cidx] -= d;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // consistency: remaining rows must have zero RHS
    for r in row..n {
        if !aug[r][k].is_zero() {
            return None;
        }
    }
    Some(pivot_rows.iter().map(|&r| aug[r][k].clone()).collect())
}
