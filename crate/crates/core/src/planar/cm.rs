//! Complex multiplication detection and the rotation families it creates.
//!
//! A point has CM exactly when `a` and `b^2` are rational; then every
//! rational multiple of `b` is a valid rotation parameter and the lattice has
//! non-parallel rectangular sublattices. Otherwise any rotation parameter is
//! essentially unique: the two quadratic roots multiply to -1.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::quad::QuadNum;
use crate::exact::rational::Rational;
use crate::planar::tau::Tau;
use crate::planar::vr::{rotation_roots, vr_decide, VRCertificate};

/// One verified rotation parameter of the CM family `t = q b`.
#[derive(Clone, Debug)]
pub struct TSample {
    pub q: Rational,
    pub t: QuadNum,
    pub a_minus_bt: Rational,
    pub a_plus_b_over_t: Rational,
}

/// Essential-uniqueness check for non-CM points: the two quadratic roots are
/// negative reciprocals.
#[derive(Clone, Debug)]
pub struct RootsCheck {
    pub t: QuadNum,
    pub other: QuadNum,
    pub product_is_minus_one: bool,
}

#[derive(Clone, Debug)]
pub struct CMReport {
    pub is_cm: bool,
    /// Verified samples `t = q b` for q in {1, 1/2, 2, 3, 1/3} (CM only).
    pub samples: Vec<TSample>,
    /// Root-pair check (virtually rectangular non-CM only).
    pub uniqueness: Option<RootsCheck>,
}

const SAMPLE_QS: [(i64, i64); 5] = [(1, 1), (1, 2), (2, 1), (3, 1), (1, 3)];

pub fn cm_analyze(tau: &Tau) -> Result<CMReport> {
    let a = tau.a();
    let b = tau.b();
    let is_cm = a.is_rational() && b.square().is_rational();

    if is_cm {
        let mut samples = Vec::with_capacity(SAMPLE_QS.len());
        for (num, den) in SAMPLE_QS {
            let q = Rational::new(BigInt::from(num), BigInt::from(den));
            let t = b.mul_rational(&q);
            let a_minus_bt = a.sub(&b.mul(&t));
            let a_plus_b_over_t = a.add(&b.div(&t)?);
            let (x, y) = match (a_minus_bt.as_rational(), a_plus_b_over_t.as_rational()) {
                (Some(x), Some(y)) => (x.clone(), y.clone()),
                _ => {
                    return Err(Error::CertificateInvalid(format!(
                        "CM sample t = {} b failed its rationality identities",
                        q
                    )))
                }
            };
            samples.push(TSample {
                q,
                t,
                a_minus_bt: x,
                a_plus_b_over_t: y,
            });
        }
        return Ok(CMReport {
            is_cm: true,
            samples,
            uniqueness: None,
        });
    }

    let uniqueness = match vr_decide(tau) {
        VRCertificate::IrrationalA { .. } => {
            let [(_, t1), (_, t2)] = rotation_roots(tau).expect("certificate says VR");
            let product = t1.mul(&t2);
            let minus_one = QuadNum::rational(Rational::from_integer(BigInt::from(-1)));
            Some(RootsCheck {
                product_is_minus_one: product == minus_one,
                t: t1,
                other: t2,
            })
        }
        _ => None,
    };
    Ok(CMReport {
        is_cm: false,
        samples: Vec::new(),
        uniqueness,
    })
}

/// Distinct sample count helper (all five `q b` values are distinct for
/// `b > 0`).
pub fn distinct_sample_count(report: &CMReport) -> usize {
    let mut seen: Vec<&QuadNum> = Vec::new();
    for s in &report.samples {
        if !seen.iter().any(|t| **t == s.t) {
            seen.push(&s.t);
        }
    }
    seen.len()
}
