//! Numeric j-invariant from the q-expansion
//! `j = 1/Q + 744 + sum c_k Q^k`, `Q = e^(2 pi i tau)`.
//!
//! The coefficient table is shipped to k = 21 (the last entry only feeds the
//! truncation bound). The heuristic error bound is
//! `2 |c_(terms+1)| |Q|^(terms+1)`; a request whose bound exceeds
//! `10^-precision` is refused.

use num_bigint::BigInt;

use crate::bigdec::{self, BigDec, CDec};
use crate::error::{Error, Result};
use crate::planar::reduce::reduce_to_fundamental;
use crate::planar::tau::Tau;

/// Series coefficients c_1..c_21, exact.
pub const MAX_TERMS: usize = 20;

const COEFFS: [&str; 21] = [
    "196884",
    "21493760",
    "864299970",
    "20245856256",
    "333202640600",
    "4252023300096",
    "44656994071935",
    "401490886656000",
    "3176440229784420",
    "22567393309593600",
    "146211911499519294",
    "874313719685775360",
    "4872010111798142520",
    "25497827389410525184",
    "126142916465781843075",
    "593121772421445058560",
    "2662842413150775245160",
    "11459912788444786513920",
    "47438786801234168813250",
    "189449976248893390028800",
    "731811377318137519245696",
];

pub fn coefficient(k: usize) -> BigInt {
    COEFFS[k - 1].parse().expect("table entries are integers")
}

#[derive(Clone, Debug)]
pub struct JInvariant {
    pub re: BigDec,
    pub im: BigDec,
    /// Heuristic truncation bound `2 |c_(terms+1)| |Q|^(terms+1)`.
    pub error_bound: BigDec,
    pub terms: usize,
    pub precision: u32,
    /// The domain representative actually evaluated.
    pub reduced: Tau,
}

/// Evaluate the j-invariant at `precision` requested digits using `terms`
/// series terms. Unreduced input is reduced first.
pub fn j_invariant(tau: &Tau, terms: usize, precision: u32) -> Result<JInvariant> {
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be at least 1".into()));
    }
    if terms > MAX_TERMS {
        return Err(Error::TooFewTermsForPrecision {
            terms,
            precision,
            bound: format!("coefficient table ends at k = {}", MAX_TERMS),
        });
    }
    let reduced = if tau.is_reduced() {
        tau.clone()
    } else {
        reduce_to_fundamental(tau)?.tau
    };
    // the table coefficients reach ~10^24, so q-powers need that many
    // extra digits before the products are formed
    let scale = precision + 40;
    let a = reduced.a().eval(scale);
    let b = reduced.b().eval(scale);

    let two_pi = bigdec::pi(scale).mul_int(&BigInt::from(2));
    let angle = two_pi.mul(&a, scale);
    let (sin_a, cos_a) = bigdec::sin_cos(&angle, scale);
    let decay = bigdec::exp(&two_pi.mul(&b, scale).neg(), scale);
    let growth = bigdec::exp(&two_pi.mul(&b, scale), scale);

    // Q = decay (cos + i sin); 1/Q = growth (cos - i sin)
    let q = CDec::new(decay.mul(&cos_a, scale), decay.mul(&sin_a, scale));
    let q_inv = CDec::new(growth.mul(&cos_a, scale), growth.mul(&sin_a, scale).neg());

    let mut acc = q_inv.add(&CDec::new(BigDec::from_int(744, scale), BigDec::zero(scale)));
    let mut q_pow = CDec::new(BigDec::one(scale), BigDec::zero(scale));
    for k in 1..=terms {
        q_pow = q_pow.mul(&q, scale);
        acc = acc.add(&q_pow.mul_int(&coefficient(k)));
    }

    let error_bound = decay
        .pow_usize(terms + 1, scale)
        .mul_int(&(coefficient(terms + 1) * 2));
    if error_bound.cmp_val(&BigDec::eps(precision, scale)) == std::cmp::Ordering::Greater {
        return Err(Error::TooFewTermsForPrecision {
            terms,
            precision,
            bound: error_bound.to_fixed_string(precision.min(30)),
        });
    }
    Ok(JInvariant {
        re: acc.re,
        im: acc.im,
        error_bound,
        terms,
        precision,
        reduced,
    })
}

#[cfg(test)]
mod tests {

    use super::*;
    use crate::testutil::tau;
    use num_traits::{One, Zero};

    /// Independent oracle: j-series coefficients from the exact integer
    /// series of the normalized Eisenstein series cubed over the discriminant
    /// product form.
    fn oracle_coefficients(count: usize) -> Vec<BigInt> {
        let n = count + 2;
        let sigma3 = |k: usize| -> BigInt {
            let mut s = BigInt::zero();
            for d in 1..=k {
                if k % d == 0 {
                    s += BigInt::from(d).pow(3);
                }
            }
            s
        };
        let mut e4 = vec![BigInt::zero(); n];
        e4[0] = BigInt::one();
        for (k, e) in e4.iter_mut().enumerate().skip(1) {
            *e = BigInt::from(240) * sigma3(k);
        }
        let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
            let mut c = vec![BigInt::zero(); n];
            for i in 0..n {
                if a[i].is_zero() {
                    continue;
                }
                for j in 0..n - i {
                    let t = &a[i] * &b[j];
                    c[i + j] += t;
                }
            }
            c
        };
        let e4_cubed = mul(&mul(&e4, &e4), &e4);
        // delta / q = prod (1 - q^m)^24
        let mut dq = vec![BigInt::zero(); n];
        dq[0] = BigInt::one();
        for m in 1..n {
            for _ in 0..24 {
                let mut nd = dq.clone();
                for i in 0..n - m {
                    let t = dq[i].clone();
                    nd[i + m] -= t;
                }
                dq = nd;
            }
        }
        // series division: out = e4^3 / dq  (dq[0] = 1)
        let mut out = vec![BigInt::zero(); n];
        let mut rem = e4_cubed;
        for i in 0..n {
            out[i] = rem[i].clone();
            for k in 0..n - i {
                let t = &out[i] * &dq[k];
                rem[i + k] -= t;
            }
        }
        // j = 1/q + out[1] + out[2] q + ...: c_k = out[k+1]
        assert_eq!(out[1], BigInt::from(744));
        (1..=count).map(|k| out[k + 1].clone()).collect()
    }

    #[test]
    fn shipped_table_matches_series_oracle() {
        let oracle = oracle_coefficients(21);
        for (k, expect) in oracle.iter().enumerate() {
            assert_eq!(
                coefficient(k + 1),
                *expect,
                "coefficient c_{} disagrees with the oracle",
                k + 1
            );
        }
    }

    #[test]
    fn j_at_i_is_1728() {
        let t = tau("0", "0", "1", "0", 1);
        let j = j_invariant(&t, 10, 12).unwrap();
        let diff = j.re.sub(&BigDec::from_int(1728, 12)).abs();
        assert!(diff.cmp_val(&BigDec::eps(9, j.re.scale())) == std::cmp::Ordering::Less);
        assert!(j.im.abs().cmp_val(&BigDec::eps(9, j.im.scale())) == std::cmp::Ordering::Less);
    }

    #[test]
    fn j_at_corner_is_zero() {
        // 1/2 + (sqrt3/2) i, the canonical representative of the corner
        let t = tau("1/2", "0", "0", "1/2", 3);
        let j = j_invariant(&t, 15, 14).unwrap();
        assert!(j.re.abs().cmp_val(&BigDec::eps(9, j.re.scale())) == std::cmp::Ordering::Less);
        assert!(j.im.abs().cmp_val(&BigDec::eps(9, j.im.scale())) == std::cmp::Ordering::Less);
    }

    #[test]
    fn j_at_2i_is_287496() {
        let t = tau("0", "0", "2", "0", 1);
        let j = j_invariant(&t, 15, 30).unwrap();
        let diff = j.re.sub(&BigDec::from_int(287496, 30)).abs();
        assert!(diff.cmp_val(&BigDec::eps(6, j.re.scale())) == std::cmp::Ordering::Less);
    }

    #[test]
    fn unreduced_input_is_reduced_first() {
        let t = tau("0", "0", "1/2", "0", 1); // i/2 reduces to 2i
        let j = j_invariant(&t, 15, 30).unwrap();
        let diff = j.re.sub(&BigDec::from_int(287496, 30)).abs();
        assert!(diff.cmp_val(&BigDec::eps(6, j.re.scale())) == std::cmp::Ordering::Less);
    }

    #[test]
    fn unreachable_precision_is_refused() {
        let t = tau("0", "0", "1", "0", 1);
        match j_invariant(&t, 1, 40) {
            Err(Error::TooFewTermsForPrecision { .. }) => {}
            other => panic!("expected TooFewTermsForPrecision, got {:?}", other),
        }
        match j_invariant(&t, 21, 10) {
            Err(Error::TooFewTermsForPrecision { .. }) => {}
            other => panic!("expected refusal beyond the table, got {:?}", other),
        }
    }
}
