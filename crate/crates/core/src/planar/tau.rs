//! Upper half-plane points `tau = a + bi` with exact coordinates in one real
//! quadratic field.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::quad::QuadNum;
use crate::exact::rational::Rational;

/// A point `a + bi` with `a`, `b` in the same field `Q(sqrt(D))` and `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    a: QuadNum,
    b: QuadNum,
}

impl Tau {
    pub fn new(a: QuadNum, b: QuadNum) -> Result<Self> {
        let d = if a.discriminant() != 1 {
            a.discriminant()
        } else {
            b.discriminant()
        };
        let a = a.promote(d)?;
        let b = b.promote(d)?;
        if b.sign() <= 0 {
            return Err(Error::NotUpperHalfPlane);
        }
        Ok(Tau { a, b })
    }

    pub fn from_rationals(a: Rational, b: Rational) -> Result<Self> {
        Tau::new(QuadNum::rational(a), QuadNum::rational(b))
    }

    pub fn a(&self) -> &QuadNum {
        &self.a
    }

    pub fn b(&self) -> &QuadNum {
        &self.b
    }

    pub fn discriminant(&self) -> u64 {
        self.a.discriminant()
    }

    /// `|tau|^2 = a^2 + b^2`, exactly.
    pub fn norm_sq(&self) -> QuadNum {
        self.a.square().add(&self.b.square())
    }

    /// Exact membership in the canonical fundamental domain:
    /// `-1/2 < a <= 1/2`, `|tau| >= 1`, and not on the excluded arc
    /// (`|tau| = 1` with `a < 0`).
    pub fn is_reduced(&self) -> bool {
        let half = QuadNum::rational(Rational::new(BigInt::from(1), BigInt::from(2)));
        if self.a.sub(&half).sign() > 0 {
            return false;
        }
        if self.a.add(&half).sign() <= 0 {
            return false;
        }
        let arc = self.norm_sq().sub(&QuadNum::one());
        match arc.sign() {
            -1 => false,
            0 => self.a.sign() >= 0,
            _ => true,
        }
    }

    /// Exact Moebius action of an integer matrix `[[p, q], [r, s]]` with
    /// positive determinant.
    pub fn moebius(&self, g: &[[BigInt; 2]; 2]) -> Tau {
        let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
        assert!(det > BigInt::zero(), "transform must preserve orientation");
        let p = QuadNum::rational(Rational::from_integer(g[0][0].clone()));
        let q = QuadNum::rational(Rational::from_integer(g[0][1].clone()));
        let r = QuadNum::rational(Rational::from_integer(g[1][0].clone()));
        let s = QuadNum::rational(Rational::from_integer(g[1][1].clone()));
        // (p tau + q) / (r tau + s) with tau = a + bi
        let ra_s = r.mul(&self.a).add(&s);
        let rb = r.mul(&self.b);
        let denom = ra_s.square().add(&rb.square());
        let pa_q = p.mul(&self.a).add(&q);
        let pb = p.mul(&self.b);
        let re = pa_q.mul(&ra_s).add(&pb.mul(&rb)).div(&denom).expect("denominator nonzero");
        let im = self
            .b
            .mul_rational(&Rational::from_integer(det))
            .div(&denom)
            .expect("denominator nonzero");
        Tau { a: re, b: im }
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({}) i", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    use crate::testutil::tau;

    #[test]
    fn rejects_lower_half_plane() {
        assert!(matches!(
            Tau::from_rationals(
                parse_rational("0").unwrap(),
                parse_rational("-1").unwrap()
            ),
            Err(Error::NotUpperHalfPlane)
        ));
    }

    #[test]
    fn rejects_mixed_fields() {
        let a = QuadNum::new(parse_rational("0").unwrap(), parse_rational("1").unwrap(), 2)
            .unwrap();
        let b = QuadNum::new(parse_rational("0").unwrap(), parse_rational("1").unwrap(), 3)
            .unwrap();
        assert!(matches!(
            Tau::new(a, b),
            Err(Error::UnsupportedFieldTower { .. })
        ));
    }

    #[test]
    fn reduced_membership_is_exact() {
        // i is reduced
        assert!(tau("0", "0", "1", "0", 1).is_reduced());
        // the corner 1/2 + (sqrt3/2) i is reduced
        assert!(tau("1/2", "0", "0", "1/2", 3).is_reduced());
        // the excluded arc: -1/2 + ... norm 1 with a < 0
        assert!(!tau("-1/2", "0", "0", "1/2", 3).is_reduced());
        // below the arc
        assert!(!tau("0", "0", "1/2", "0", 1).is_reduced());
        // a = -1/2 edge is excluded
        assert!(!tau("-1/2", "0", "2", "0", 1).is_reduced());
        assert!(tau("1/2", "0", "2", "0", 1).is_reduced());
    }

    #[test]
    fn moebius_translation_and_inversion() {
        let t = tau("5/2", "0", "1", "0", 1);
        let g = [
            [BigInt::from(1), BigInt::from(-2)],
            [BigInt::from(0), BigInt::from(1)],
        ];
        let t2 = t.moebius(&g);
        assert_eq!(t2.a(), &QuadNum::new(parse_rational("1/2").unwrap(), parse_rational("0").unwrap(), 1).unwrap());
        // inversion of i/2 gives 2i
        let t = tau("0", "0", "1/2", "0", 1);
        let g = [
            [BigInt::from(0), BigInt::from(-1)],
            [BigInt::from(1), BigInt::from(0)],
        ];
        let t2 = t.moebius(&g);
        assert!(t2.a().is_zero());
        assert_eq!(t2.b().as_rational(), Some(&parse_rational("2").unwrap()));
    }
}
