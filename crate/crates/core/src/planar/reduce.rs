//! Reduction to the canonical fundamental domain by exact translations and
//! inversions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::quad::QuadNum;
use crate::exact::rational::Rational;
use crate::planar::tau::Tau;

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub tau: Tau,
    /// The matrix applied to the input (determinant +1).
    pub transform: [[BigInt; 2]; 2],
    pub steps: usize,
}

fn mat_mul(a: &[[BigInt; 2]; 2], b: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let mut out = [
        [BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero()],
    ];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    out
}

fn identity() -> [[BigInt; 2]; 2] {
    [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ]
}

fn translation(m: &BigInt) -> [[BigInt; 2]; 2] {
    [
        [BigInt::one(), m.clone()],
        [BigInt::zero(), BigInt::one()],
    ]
}

fn inversion() -> [[BigInt; 2]; 2] {
    [
        [BigInt::zero(), BigInt::from(-1)],
        [BigInt::one(), BigInt::zero()],
    ]
}

/// Translate-and-invert until the point lands in the fundamental domain,
/// with the boundary canonicalized (`a = +1/2` kept, the short arc with
/// `a < 0` mapped across). All arithmetic is exact in the field.
pub fn reduce_to_fundamental(tau: &Tau) -> Result<ReductionResult> {
    let half = QuadNum::rational(Rational::new(BigInt::one(), BigInt::from(2)));
    let mut current = tau.clone();
    let mut transform = identity();
    let mut steps = 0usize;

    loop {
        // unique m with a - m in (-1/2, 1/2]
        let m = current.a().sub(&half).ceil();
        if !m.is_zero() {
            let g = translation(&(-m.clone()));
            current = current.moebius(&g);
            transform = mat_mul(&g, &transform);
            steps += 1;
        }
        let norm = current.norm_sq();
        if norm.sub(&QuadNum::one()).sign() < 0 {
            let g = inversion();
            current = current.moebius(&g);
            transform = mat_mul(&g, &transform);
            steps += 1;
        } else {
            break;
        }
    }
    // boundary arc: |tau| = 1 with a < 0 maps to the kept half
    if current.norm_sq().sub(&QuadNum::one()).is_zero() && current.a().sign() < 0 {
        let g = inversion();
        current = current.moebius(&g);
        transform = mat_mul(&g, &transform);
        steps += 1;
    }

    debug_assert!(current.is_reduced());
    debug_assert_eq!(tau.moebius(&transform), current);
    Ok(ReductionResult {
        tau: current,
        transform,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;
    use crate::testutil::tau;

    fn rq(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn integer_translation() {
        let t = tau("5/2", "0", "1", "0", 1);
        let r = reduce_to_fundamental(&t).unwrap();
        assert_eq!(r.tau.a().as_rational(), Some(&rq("1/2")));
        assert_eq!(r.tau.b().as_rational(), Some(&rq("1")));
        assert_eq!(
            r.transform,
            [
                [BigInt::from(1), BigInt::from(-2)],
                [BigInt::from(0), BigInt::from(1)]
            ]
        );
    }

    #[test]
    fn half_plus_half_i_reduces_to_i() {
        let t = tau("1/2", "0", "1/2", "0", 1);
        let r = reduce_to_fundamental(&t).unwrap();
        assert!(r.tau.a().is_zero());
        assert_eq!(r.tau.b().as_rational(), Some(&rq("1")));
        // the composed transform maps the input to i exactly
        assert_eq!(t.moebius(&r.transform), r.tau);
        assert!(r.tau.is_reduced());
    }

    #[test]
    fn half_i_inverts_to_two_i() {
        let t = tau("0", "0", "1/2", "0", 1);
        let r = reduce_to_fundamental(&t).unwrap();
        assert!(r.tau.a().is_zero());
        assert_eq!(r.tau.b().as_rational(), Some(&rq("2")));
        assert_eq!(r.steps, 1);
    }

    #[test]
    fn excluded_arc_maps_to_kept_half() {
        // -1/2 + (sqrt3/2) i sits on the excluded arc boundary corner;
        // reduction lands on the kept corner 1/2 + (sqrt3/2) i
        let t = tau("-2/5", "0", "0", "1/2", 3);
        // norm = 4/25 + 3/4 = 91/100 < 1: this is below the arc, reduction
        // applies an inversion and possibly translations
        let r = reduce_to_fundamental(&t).unwrap();
        assert!(r.tau.is_reduced());
        assert_eq!(t.moebius(&r.transform), r.tau);
    }

    #[test]
    fn negative_half_edge_becomes_positive_half() {
        let t = tau("-1/2", "0", "2", "0", 1);
        let r = reduce_to_fundamental(&t).unwrap();
        assert_eq!(r.tau.a().as_rational(), Some(&rq("1/2")));
        assert!(r.tau.is_reduced());
    }

    #[test]
    fn reduction_is_idempotent() {
        let t = tau("0", "1/5", "0", "1/2", 5);
        let r = reduce_to_fundamental(&t).unwrap();
        let r2 = reduce_to_fundamental(&r.tau).unwrap();
        assert_eq!(r.tau, r2.tau);
        assert_eq!(r2.steps, 0);
        assert_eq!(r2.transform, identity());
    }
}
