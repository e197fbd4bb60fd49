//! Geodesic through a point, classified by rationality of its trace data.
//!
//! A point with rational real part sits on a vertical geodesic closed at
//! infinity. Otherwise there is a unique semicircle through the point,
//! orthogonal to the real axis, with rational trace data `(p, q)` satisfying
//! `a^2 + b^2 - a p + q = 0`; the geodesic is closed at infinity exactly
//! when `p^2 - 4q` is the square of a rational.

use num_bigint::BigInt;

use crate::exact::quad::QuadNum;
use crate::exact::rational::{rational_sqrt, Rational};
use crate::planar::tau::Tau;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeodesicShape {
    Vertical { x: QuadNum },
    /// `x^2 - p x + q = 0` at the real axis; center `p/2`, radius
    /// `sqrt(p^2 - 4q)/2`.
    Semicircle { p: Rational, q: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicClass {
    pub shape: GeodesicShape,
    pub closed_at_infinity: bool,
    /// Real-axis endpoints when the semicircle is closed, ascending.
    pub endpoints: Option<(Rational, Rational)>,
}

pub fn geodesic_classify(tau: &Tau) -> GeodesicClass {
    let a = tau.a();
    if a.is_rational() {
        return GeodesicClass {
            shape: GeodesicShape::Vertical { x: a.clone() },
            closed_at_infinity: true,
            endpoints: None,
        };
    }
    let a0 = a.rational_part().clone();
    let a1 = a.surd_part().clone();
    let s = tau.norm_sq();
    let s0 = s.rational_part().clone();
    let s1 = s.surd_part().clone();
    // irrational part of a^2 + b^2 - p a + q = 0 forces p; the rational part
    // then forces q
    let p = &s1 / &a1;
    let q = &a0 * &p - &s0;
    debug_assert!(
        s.sub(&a.mul_rational(&p))
            .add(&QuadNum::rational(q.clone()))
            .is_zero(),
        "trace data must satisfy the circle equation exactly"
    );
    let disc = &p * &p - Rational::from_integer(BigInt::from(4)) * &q;
    match rational_sqrt(&disc) {
        Some(root) => {
            let two = Rational::from_integer(BigInt::from(2));
            let lo = (&p - &root) / &two;
            let hi = (&p + &root) / &two;
            GeodesicClass {
                shape: GeodesicShape::Semicircle { p, q },
                closed_at_infinity: true,
                endpoints: Some((lo, hi)),
            }
        }
        None => GeodesicClass {
            shape: GeodesicShape::Semicircle { p, q },
            closed_at_infinity: false,
            endpoints: None,
        },
    }
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
    fn unit_semicircle_through_sqrt2_over_2() {
        let t = tau("0", "1/2", "0", "1/2", 2);
        let g = geodesic_classify(&t);
        assert_eq!(
            g.shape,
            GeodesicShape::Semicircle {
                p: rq("0"),
                q: rq("-1")
            }
        );
        assert!(g.closed_at_infinity);
        assert_eq!(g.endpoints, Some((rq("-1"), rq("1"))));
    }

    #[test]
    fn open_semicircle_through_sqrt2_plus_i() {
        let t = tau("0", "1", "1", "0", 2);
        let g = geodesic_classify(&t);
        assert_eq!(
            g.shape,
            GeodesicShape::Semicircle {
                p: rq("0"),
                q: rq("-3")
            }
        );
        assert!(!g.closed_at_infinity, "endpoints are irrational");
        assert!(g.endpoints.is_none());
    }

    #[test]
    fn vertical_line_for_rational_a() {
        let t = tau("1/3", "0", "5", "0", 1);
        let g = geodesic_classify(&t);
        match g.shape {
            GeodesicShape::Vertical { ref x } => {
                assert_eq!(x.as_rational(), Some(&rq("1/3")));
            }
            _ => panic!("expected a vertical geodesic"),
        }
        assert!(g.closed_at_infinity);
    }
}
