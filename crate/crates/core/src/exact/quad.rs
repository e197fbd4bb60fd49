//! Exact elements of a real quadratic field: `p + q*sqrt(D)` with rational
//! `p`, `q` and squarefree `D`. `D = 1` is the degenerate pure-rational mode.
//!
//! The discriminant is fixed per computation context; mixing two genuine
//! fields is rejected. Rationals (`D = 1`) promote silently into any field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, Rational};

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut i = 2u64;
    while i * i <= n {
        if n % (i * i) == 0 {
            return false;
        }
        while n % i == 0 {
            n /= i;
        }
        i += 1;
    }
    true
}

/// `p + q*sqrt(D)` over the field with squarefree discriminant `D`.
#[derive(Clone, Debug)]
pub struct QuadNum {
    p: Rational,
    q: Rational,
    d: u64,
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        // rational values compare equal across fields
        self.p == other.p && self.q == other.q && (self.q.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadNum {}

impl QuadNum {
    pub fn new(p: Rational, q: Rational, d: u64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        if d == 1 {
            // sqrt(1) == 1: fold the surd part into the rational part
            return Ok(QuadNum {
                p: p + q,
                q: BigRational::zero(),
                d: 1,
            });
        }
        Ok(QuadNum { p, q, d })
    }

    pub fn rational(p: Rational) -> Self {
        QuadNum {
            p,
            q: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_int(v: i64) -> Self {
        QuadNum::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        QuadNum::from_int(0)
    }

    pub fn one() -> Self {
        QuadNum::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn surd_part(&self) -> &Rational {
        &self.q
    }

    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.q.is_zero() {
            Some(&self.p)
        } else {
            None
        }
    }

    /// Lift into the field with discriminant `d`. Only rationals can move
    /// between fields.
    pub fn promote(&self, d: u64) -> Result<Self> {
        if self.d == d {
            return Ok(self.clone());
        }
        if self.q.is_zero() {
            return Ok(QuadNum {
                p: self.p.clone(),
                q: BigRational::zero(),
                d,
            });
        }
        Err(Error::UnsupportedFieldTower {
            left: self.d,
            right: d,
        })
    }

    fn unify(&self, rhs: &QuadNum) -> Result<(QuadNum, QuadNum)> {
        if self.d == rhs.d {
            return Ok((self.clone(), rhs.clone()));
        }
        if self.q.is_zero() {
            return Ok((self.promote(rhs.d)?, rhs.clone()));
        }
        if rhs.q.is_zero() {
            return Ok((self.clone(), rhs.promote(self.d)?));
        }
        Err(Error::UnsupportedFieldTower {
            left: self.d,
            right: rhs.d,
        })
    }

    pub fn add(&self, rhs: &QuadNum) -> QuadNum {
        let (a, b) = self.unify(rhs).expect("field mismatch in add");
        QuadNum {
            p: a.p + b.p,
            q: a.q + b.q,
            d: a.d.max(b.d),
        }
    }

    pub fn sub(&self, rhs: &QuadNum) -> QuadNum {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> QuadNum {
        QuadNum {
            p: -self.p.clone(),
            q: -self.q.clone(),
            d: self.d,
        }
    }

    pub fn mul(&self, rhs: &QuadNum) -> QuadNum {
        let (a, b) = self.unify(rhs).expect("field mismatch in mul");
        let d = BigRational::from_integer(BigInt::from(a.d.max(b.d)));
        QuadNum {
            p: &a.p * &b.p + &a.q * &b.q * &d,
            q: &a.p * &b.q + &a.q * &b.p,
            d: a.d.max(b.d),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> QuadNum {
        QuadNum {
            p: &self.p * r,
            q: &self.q * r,
            d: self.d,
        }
    }

    pub fn square(&self) -> QuadNum {
        self.mul(self)
    }

    /// Field conjugate `p - q*sqrt(D)`.
    pub fn conj(&self) -> QuadNum {
        QuadNum {
            p: self.p.clone(),
            q: -self.q.clone(),
            d: self.d,
        }
    }

    /// Multiplicative inverse via the conjugate: `(p - q sqrt(D)) / (p^2 - q^2 D)`.
    pub fn inv(&self) -> Result<QuadNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.p * &self.p - &self.q * &self.q * &d;
        if norm.is_zero() {
            // impossible for squarefree D > 1 and nonzero value
            return Err(Error::DegenerateNorm);
        }
        Ok(QuadNum {
            p: &self.p / &norm,
            q: -&self.q / &norm,
            d: self.d,
        })
    }

    pub fn div(&self, rhs: &QuadNum) -> Result<QuadNum> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Exact sign by case analysis on the signs of `p`, `q` and comparison of
    /// `p^2` against `q^2 D`. No floating point involved.
    pub fn sign(&self) -> i8 {
        let sp = if self.p.is_zero() {
            0
        } else if self.p.is_positive() {
            1
        } else {
            -1
        };
        let sq = if self.q.is_zero() {
            0
        } else if self.q.is_positive() {
            1
        } else {
            -1
        };
        match (sp, sq) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // mixed signs: |p| vs |q| sqrt(D) decided by squares
                let d = BigRational::from_integer(BigInt::from(self.d));
                let lhs = &self.p * &self.p;
                let rhs = &self.q * &self.q * &d;
                match lhs.cmp(&rhs) {
                    Ordering::Equal => 0,
                    Ordering::Greater => sp,
                    Ordering::Less => -sp,
                }
            }
        }
    }

    pub fn abs(&self) -> QuadNum {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn cmp_val(&self, rhs: &QuadNum) -> Ordering {
        match self.sub(rhs).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Exact integer floor. Uses a numeric estimate, then verifies with
    /// exact sign tests.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let est = self.eval(30);
        let mut m = est.round_int();
        // correct the estimate exactly: want m <= x < m+1
        loop {
            let lo = self.sub(&QuadNum::rational(BigRational::from_integer(m.clone())));
            if lo.sign() < 0 {
                m -= 1;
                continue;
            }
            let hi = self.sub(&QuadNum::rational(BigRational::from_integer(&m + 1)));
            if hi.sign() >= 0 {
                m += 1;
                continue;
            }
            return m;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Numeric value at `precision` digits (plus guard digits internally).
    pub fn eval(&self, precision: u32) -> BigDec {
        let scale = precision + 10;
        let mut acc = BigDec::from_rational(&self.p, scale);
        if !self.q.is_zero() {
            let sq = BigDec::from_int(self.d as i64, scale)
                .sqrt(scale)
                .expect("D > 0");
            acc = acc.add(&sq.mul_rational(&self.q, scale));
        }
        acc
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", format_rational(&self.p));
        }
        let surd = if self.q.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.q.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", format_rational(&self.q), self.d)
        };
        if self.p.is_zero() {
            write!(f, "{}", surd)
        } else if surd.starts_with('-') {
            write!(f, "{} - {}", format_rational(&self.p), &surd[1..])
        } else {
            write!(f, "{} + {}", format_rational(&self.p), surd)
        }
    }
}
