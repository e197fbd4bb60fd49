//! Virtual-rectangularity decision for `Gamma_tau = Z + Z tau` and the exact
//! isogeny degree of the rectangular sublattice it produces.
//!
//! For irrational `a = a0 + a1 sqrt(D)` the rotation parameter `t` must be of
//! the form `(a - r)/b` with `r` rational, and requiring `a + b^2/(a - r)` to
//! be rational forces the quadratic `a1 u^2 + B1 u - a1 (a1^2 D + B0) = 0` in
//! `u = a0 - r`, where `b^2 = B0 + B1 sqrt(D)`. The point is virtually
//! rectangular exactly when the discriminant is the square of a rational.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::quad::QuadNum;
use crate::exact::rational::{rational_sqrt, Rational};
use crate::planar::tau::Tau;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VRCertificate {
    /// `a` is rational; the denominator is the isogeny degree.
    RationalA { denominator: BigInt },
    /// `a` irrational with a witness rotation: `a - b t = r` and
    /// `a + b/t` rational with denominator `w`.
    IrrationalA {
        r: Rational,
        t: QuadNum,
        v: BigInt,
        w: BigInt,
        delta: Rational,
    },
    /// Not virtually rectangular; the witness is the non-square discriminant
    /// of the rotation quadratic.
    NotVR { witness: Rational },
}

impl VRCertificate {
    pub fn is_vr(&self) -> bool {
        !matches!(self, VRCertificate::NotVR { .. })
    }
}

/// Both roots of the rotation quadratic, when they are rational:
/// `(r, t)` pairs with `t = (a - r)/b`.
pub(crate) fn rotation_roots(tau: &Tau) -> Option<[(Rational, QuadNum); 2]> {
    let a = tau.a();
    let b = tau.b();
    let a0 = a.rational_part().clone();
    let a1 = a.surd_part().clone();
    debug_assert!(!a1.is_zero());
    let b_sq = b.square();
    let b0 = b_sq.rational_part().clone();
    let b1 = b_sq.surd_part().clone();
    let d = Rational::from_integer(BigInt::from(tau.discriminant()));

    // a1 u^2 + B1 u - a1 (a1^2 D + B0) = 0
    let c = &a1 * (&a1 * &a1 * &d + &b0);
    let disc = &b1 * &b1 + Rational::from_integer(BigInt::from(4)) * &a1 * &c;
    let root = rational_sqrt(&disc)?;
    let two_a1 = Rational::from_integer(BigInt::from(2)) * &a1;
    let u_plus = (-&b1 + &root) / &two_a1;
    let u_minus = (-&b1 - &root) / &two_a1;
    let make = |u: Rational| -> (Rational, QuadNum) {
        let r = &a0 - &u;
        let t = a
            .sub(&QuadNum::rational(r.clone()))
            .div(b)
            .expect("b > 0");
        (r, t)
    };
    Some([make(u_plus), make(u_minus)])
}

/// The discriminant of the rotation quadratic (irrational `a` only).
fn rotation_discriminant(tau: &Tau) -> Rational {
    let a1 = tau.a().surd_part().clone();
    let b_sq = tau.b().square();
    let b0 = b_sq.rational_part().clone();
    let b1 = b_sq.surd_part().clone();
    let d = Rational::from_integer(BigInt::from(tau.discriminant()));
    &b1 * &b1
        + Rational::from_integer(BigInt::from(4)) * &a1 * &a1 * (&a1 * &a1 * &d + &b0)
}

/// Exact evaluation of `|b| v w (t^2 + 1) / |t|`; the result must be
/// rational.
pub(crate) fn delta_formula(
    b: &QuadNum,
    v: &BigInt,
    w: &BigInt,
    t: &QuadNum,
) -> Result<Rational> {
    let t_sq_plus_one = t.square().add(&QuadNum::one());
    let value = b
        .abs()
        .mul_rational(&Rational::from_integer(v * w))
        .mul(&t_sq_plus_one)
        .div(&t.abs())?;
    match value.as_rational() {
        Some(r) => Ok(r.clone()),
        None => Err(Error::CertificateInvalid(format!(
            "degree formula evaluated to the irrational value {}",
            value
        ))),
    }
}

/// Decide virtual rectangularity of `Gamma_tau`. `NotVR` is a value, not an
/// error.
pub fn vr_decide(tau: &Tau) -> VRCertificate {
    let a = tau.a();
    if let Some(r) = a.as_rational() {
        return VRCertificate::RationalA {
            denominator: r.denom().clone(),
        };
    }
    let roots = match rotation_roots(tau) {
        Some(roots) => roots,
        None => {
            return VRCertificate::NotVR {
                witness: rotation_discriminant(tau),
            }
        }
    };
    // prefer the root with smaller |r|; on a tie, the one with t > 0
    let pick = {
        let [(r1, t1), (r2, t2)] = &roots;
        match r1.abs().cmp(&r2.abs()) {
            std::cmp::Ordering::Less => (r1.clone(), t1.clone()),
            std::cmp::Ordering::Greater => (r2.clone(), t2.clone()),
            std::cmp::Ordering::Equal => {
                if t1.sign() > 0 {
                    (r1.clone(), t1.clone())
                } else {
                    (r2.clone(), t2.clone())
                }
            }
        }
    };
    let (r, t) = pick;
    let v = r.denom().clone();
    let a_plus_b_over_t = a.add(&tau.b().div(&t).expect("t nonzero"));
    let w = a_plus_b_over_t
        .as_rational()
        .expect("the quadratic forces rationality")
        .denom()
        .clone();
    let delta = delta_formula(tau.b(), &v, &w, &t).expect("certificate is exact by construction");
    VRCertificate::IrrationalA { r, t, v, w, delta }
}

#[derive(Clone, Debug)]
pub struct IsogenyDegree {
    /// The degree from the closed formula.
    pub delta: Rational,
    /// Index of the explicitly constructed rectangular sublattice.
    pub constructive_index: Rational,
    /// Exact agreement of the two routes.
    pub matches: bool,
    /// Whether the degree is a (positive) integer.
    pub is_integer: bool,
}

/// Evaluate the degree formula and cross-check it against the rectangular
/// sublattice built from the rotated lattice's two explicit orthogonal
/// vectors. The common rotation scalar cancels in the index ratio.
pub fn isogeny_degree(tau: &Tau, cert: &VRCertificate) -> Result<IsogenyDegree> {
    match cert {
        VRCertificate::NotVR { .. } => Err(Error::CertificateInvalid(
            "cannot compute a degree from a NotVR certificate".into(),
        )),
        VRCertificate::RationalA { denominator } => {
            let a = tau
                .a()
                .as_rational()
                .ok_or_else(|| Error::CertificateInvalid("a is not rational".into()))?;
            if a.denom() != denominator {
                return Err(Error::CertificateInvalid(format!(
                    "stated denominator {} but a = {} has denominator {}",
                    denominator,
                    a,
                    a.denom()
                )));
            }
            // sublattice spanned by (1, 0) and (0, q b): index q
            let q = Rational::from_integer(denominator.clone());
            let det_sub = tau.b().mul_rational(&q);
            let index = det_sub.div(tau.b())?;
            let constructive = index
                .as_rational()
                .expect("ratio of parallel determinants")
                .clone();
            Ok(IsogenyDegree {
                matches: constructive == q,
                is_integer: q.denom().is_one(),
                delta: q,
                constructive_index: constructive,
            })
        }
        VRCertificate::IrrationalA { r, t, v, w, delta } => {
            let a = tau.a();
            let b = tau.b();
            // exact certificate identities
            let a_minus_bt = a.sub(&b.mul(t));
            match a_minus_bt.as_rational() {
                Some(val) if val == r => {}
                _ => {
                    return Err(Error::CertificateInvalid(format!(
                        "a - b t = {} differs from the stated r = {}",
                        a_minus_bt, r
                    )))
                }
            }
            if r.denom() != v {
                return Err(Error::CertificateInvalid("stated v is not denom(r)".into()));
            }
            let a_plus_b_over_t = a.add(&b.div(t)?);
            let s = match a_plus_b_over_t.as_rational() {
                Some(s) => s.clone(),
                None => {
                    return Err(Error::CertificateInvalid(
                        "a + b/t is not rational".into(),
                    ))
                }
            };
            if s.denom() != w {
                return Err(Error::CertificateInvalid(
                    "stated w is not denom(a + b/t)".into(),
                ));
            }
            let recomputed = delta_formula(b, v, w, t)?;
            if recomputed != *delta {
                return Err(Error::CertificateInvalid(
                    "stated delta disagrees with the formula".into(),
                ));
            }

            // constructive route: the rotated lattice contains the orthogonal
            // vectors with nonzero entries
            //   e1 = u - (a + b/t) v   and   e2 = q - (a - b t) w,
            // where r = u/v and a + b/t = q/w; the index is
            // |t e1 e2| / ((1 + t^2) |b|).
            let u = r.numer().clone();
            let q_num = s.numer().clone();
            let e1 = QuadNum::rational(Rational::from_integer(u))
                .sub(&a_plus_b_over_t.mul_rational(&Rational::from_integer(v.clone())));
            let e2 = QuadNum::rational(Rational::from_integer(q_num)).sub(
                &a_minus_bt.mul_rational(&Rational::from_integer(w.clone())),
            );
            let numer = t.mul(&e1).mul(&e2).abs();
            let denom = t.square().add(&QuadNum::one()).mul(&b.abs());
            let index = numer.div(&denom)?;
            let constructive = match index.as_rational() {
                Some(c) => c.clone(),
                None => {
                    return Err(Error::CertificateInvalid(
                        "constructive index is irrational".into(),
                    ))
                }
            };
            Ok(IsogenyDegree {
                matches: constructive == *delta,
                is_integer: delta.denom().is_one(),
                delta: delta.clone(),
                constructive_index: constructive,
            })
        }
    }
}
