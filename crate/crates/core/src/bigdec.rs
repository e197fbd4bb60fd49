//! Fixed-point decimal arithmetic on top of `BigInt`.
//!
//! A [`BigDec`] holds `mant * 10^-scale`. All rounding is half-away-from-zero,
//! so every operation is deterministic across platforms. Transcendental
//! functions carry internal guard digits and round down to the requested
//! scale at the end.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Decimal fixed-point number: `mant * 10^-scale`.
#[derive(Clone, Debug)]
pub struct BigDec {
    mant: BigInt,
    scale: u32,
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// Rounded division, half away from zero.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(!den.is_zero());
    let (mut q, r) = num.div_rem(den);
    let two_r: BigInt = r.abs() * 2;
    if two_r >= den.abs() {
        if (num.sign() == Sign::Minus) ^ (den.sign() == Sign::Minus) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

impl BigDec {
    pub fn zero(scale: u32) -> Self {
        BigDec {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn one(scale: u32) -> Self {
        BigDec {
            mant: pow10(scale),
            scale,
        }
    }

    pub fn from_int(v: i64, scale: u32) -> Self {
        BigDec {
            mant: BigInt::from(v) * pow10(scale),
            scale,
        }
    }

    pub fn from_bigint(v: &BigInt, scale: u32) -> Self {
        BigDec {
            mant: v * pow10(scale),
            scale,
        }
    }

    pub fn from_rational(r: &BigRational, scale: u32) -> Self {
        let num = r.numer() * pow10(scale);
        BigDec {
            mant: div_round(&num, r.denom()),
            scale,
        }
    }

    /// Exact power of ten `10^-e`.
    pub fn eps(e: u32, scale: u32) -> Self {
        if e > scale {
            // rounds to zero at this scale
            return BigDec::zero(scale);
        }
        BigDec {
            mant: pow10(scale - e),
            scale,
        }
    }

    /// Parse a plain decimal string like `-12.345` or `7`.
    ///
    /// Returns the value together with the number of fraction digits present
    /// in the input.
    pub fn parse(s: &str, scale: u32) -> Option<(Self, usize)> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() {
            return None;
        }
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits = format!("{}{}", int_part, frac_part);
        let mut mant: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let frac_len = frac_part.len() as u32;
        if frac_len <= scale {
            mant *= pow10(scale - frac_len);
        } else {
            mant = div_round(&mant, &pow10(frac_len - scale));
        }
        if neg {
            mant = -mant;
        }
        Some((BigDec { mant, scale }, frac_part.len()))
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn rescale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => BigDec {
                mant: &self.mant * pow10(scale - self.scale),
                scale,
            },
            Ordering::Less => BigDec {
                mant: div_round(&self.mant, &pow10(self.scale - scale)),
                scale,
            },
        }
    }

    pub fn neg(&self) -> Self {
        BigDec {
            mant: -&self.mant,
            scale: self.scale,
        }
    }

    pub fn abs(&self) -> Self {
        BigDec {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let scale = self.scale.max(rhs.scale);
        let a = self.rescale(scale);
        let b = rhs.rescale(scale);
        BigDec {
            mant: a.mant + b.mant,
            scale,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self, scale: u32) -> Self {
        let prod = &self.mant * &rhs.mant;
        let cur = self.scale + rhs.scale;
        let v = BigDec {
            mant: prod,
            scale: cur,
        };
        v.rescale(scale)
    }

    pub fn div(&self, rhs: &Self, scale: u32) -> Option<Self> {
        if rhs.mant.is_zero() {
            return None;
        }
        // self/rhs = mant_a * 10^(rhs.scale - self.scale) / mant_b
        let shift = scale as i64 + rhs.scale as i64 - self.scale as i64;
        let mant = if shift >= 0 {
            div_round(&(&self.mant * pow10(shift as u32)), &rhs.mant)
        } else {
            div_round(&self.mant, &(&rhs.mant * pow10((-shift) as u32)))
        };
        Some(BigDec { mant, scale })
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        BigDec {
            mant: &self.mant * k,
            scale: self.scale,
        }
    }

    pub fn mul_rational(&self, r: &BigRational, scale: u32) -> Self {
        let num0 = &self.mant * r.numer();
        let shift = scale as i64 - self.scale as i64;
        let (num, den) = if shift >= 0 {
            (num0 * pow10(shift as u32), r.denom().clone())
        } else {
            (num0, r.denom() * pow10((-shift) as u32))
        };
        BigDec {
            mant: div_round(&num, &den),
            scale,
        }
    }

    pub fn cmp_val(&self, rhs: &Self) -> Ordering {
        let scale = self.scale.max(rhs.scale);
        let a = self.rescale(scale);
        let b = rhs.rescale(scale);
        a.mant.cmp(&b.mant)
    }

    /// Truncated square root (`None` for negative input).
    pub fn sqrt(&self, scale: u32) -> Option<Self> {
        if self.mant.sign() == Sign::Minus {
            return None;
        }
        // sqrt(mant * 10^-s) = sqrt(mant * 10^(2*scale - s)) * 10^-scale
        let target = 2 * scale as i64 - self.scale as i64;
        let shifted = if target >= 0 {
            &self.mant * pow10(target as u32)
        } else {
            &self.mant / pow10((-target) as u32)
        };
        Some(BigDec {
            mant: shifted.sqrt(),
            scale,
        })
    }

    pub fn pow_usize(&self, e: usize, scale: u32) -> Self {
        let mut acc = BigDec::one(scale.max(self.scale));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, scale);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, scale);
            }
        }
        acc.rescale(scale)
    }

    /// Nearest integer (half away from zero).
    pub fn round_int(&self) -> BigInt {
        div_round(&self.mant, &pow10(self.scale))
    }

    /// Smallest integer >= value.
    pub fn ceil_int(&self) -> BigInt {
        let p = pow10(self.scale);
        let (q, r) = self.mant.div_rem(&p);
        if r.is_zero() || self.mant.sign() == Sign::Minus {
            q
        } else {
            q + 1
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.mant.clone(), pow10(self.scale));
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Render with exactly `digits` fraction digits.
    pub fn to_fixed_string(&self, digits: u32) -> String {
        let v = self.rescale(digits);
        let neg = v.mant.sign() == Sign::Minus;
        let abs = v.mant.abs().to_string();
        let d = digits as usize;
        let padded = if abs.len() <= d {
            format!("{}{}", "0".repeat(d + 1 - abs.len()), abs)
        } else {
            abs
        };
        let split = padded.len() - d;
        let (int_part, frac_part) = padded.split_at(split);
        let body = if d == 0 {
            int_part.to_string()
        } else {
            format!("{}.{}", int_part, frac_part)
        };
        if neg && !v.mant.is_zero() {
            format!("-{}", body)
        } else {
            body
        }
    }
}

impl fmt::Display for BigDec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fixed_string(self.scale))
    }
}

impl PartialEq for BigDec {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_val(other) == Ordering::Equal
    }
}

/// arctan(1/x) at the given scale, by the alternating power series.
fn atan_inv(x: u64, scale: u32) -> BigDec {
    let work = scale + 10;
    let unit = pow10(work);
    let x = BigInt::from(x);
    let xx = &x * &x;
    let mut power = &unit / &x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    let mut sign_neg = true;
    loop {
        power = &power / &xx;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if sign_neg {
            sum -= term;
        } else {
            sum += term;
        }
        sign_neg = !sign_neg;
        k += 1;
    }
    BigDec {
        mant: sum,
        scale: work,
    }
    .rescale(scale)
}

/// pi via Machin's formula: 16 atan(1/5) - 4 atan(1/239).
pub fn pi(scale: u32) -> BigDec {
    let work = scale + 10;
    let a = atan_inv(5, work).mul_int(&BigInt::from(16));
    let b = atan_inv(239, work).mul_int(&BigInt::from(4));
    a.sub(&b).rescale(scale)
}

/// e^x by scaling-and-squaring plus Taylor series.
pub fn exp(x: &BigDec, scale: u32) -> BigDec {
    let mut halvings = 0u32;
    let mut est = x.to_f64().abs();
    if !est.is_finite() {
        est = 0.0;
        halvings = ((&x.mant / pow10(x.scale)).bits() as u32).saturating_add(2);
    }
    while est > 0.5 {
        est /= 2.0;
        halvings += 1;
    }
    let work = scale + 15 + halvings;
    let two = BigDec::from_int(2, 0);
    let mut arg = x.rescale(work);
    for _ in 0..halvings {
        arg = arg.div(&two, work).unwrap();
    }
    let mut sum = BigDec::one(work);
    let mut term = BigDec::one(work);
    let mut n: i64 = 1;
    loop {
        term = term.mul(&arg, work);
        term = term
            .div(&BigDec::from_int(n, 0), work)
            .expect("n is nonzero");
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
        n += 1;
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum, work);
    }
    sum.rescale(scale)
}

/// Reduce x modulo 2*pi into roughly [-pi, pi].
fn mod_two_pi(x: &BigDec, work: u32) -> BigDec {
    let two_pi = pi(work + 5).mul_int(&BigInt::from(2)).rescale(work + 5);
    let q = x
        .rescale(work + 5)
        .div(&two_pi, work + 5)
        .expect("2*pi nonzero")
        .round_int();
    x.rescale(work + 5)
        .sub(&two_pi.mul_int(&q))
        .rescale(work)
}

fn sin_cos_reduced(r: &BigDec, work: u32) -> (BigDec, BigDec) {
    // Taylor series for |r| <= pi.
    let mut sin = r.clone();
    let mut cos = BigDec::one(work);
    let mut term_s = r.clone();
    let mut term_c = BigDec::one(work);
    let rr = r.mul(r, work);
    let mut n: i64 = 1;
    loop {
        // cos term: (-1)^n r^{2n} / (2n)!
        term_c = term_c.mul(&rr, work);
        term_c = term_c
            .div(&BigDec::from_int((2 * n - 1) * (2 * n), 0), work)
            .unwrap();
        // sin term: (-1)^n r^{2n+1} / (2n+1)!
        term_s = term_s.mul(&rr, work);
        term_s = term_s
            .div(&BigDec::from_int((2 * n) * (2 * n + 1), 0), work)
            .unwrap();
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        if n % 2 == 1 {
            cos = cos.sub(&term_c);
            sin = sin.sub(&term_s);
        } else {
            cos = cos.add(&term_c);
            sin = sin.add(&term_s);
        }
        n += 1;
    }
    (sin, cos)
}

pub fn sin_cos(x: &BigDec, scale: u32) -> (BigDec, BigDec) {
    let work = scale + 15;
    let r = mod_two_pi(x, work);
    let (s, c) = sin_cos_reduced(&r, work);
    (s.rescale(scale), c.rescale(scale))
}

/// Complex value over [`BigDec`].
#[derive(Clone, Debug)]
pub struct CDec {
    pub re: BigDec,
    pub im: BigDec,
}

impl CDec {
    pub fn new(re: BigDec, im: BigDec) -> Self {
        CDec { re, im }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        CDec {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self, scale: u32) -> Self {
        CDec {
            re: self.re.mul(&rhs.re, scale).sub(&self.im.mul(&rhs.im, scale)),
            im: self.re.mul(&rhs.im, scale).add(&self.im.mul(&rhs.re, scale)),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        CDec {
            re: self.re.mul_int(k),
            im: self.im.mul_int(k),
        }
    }

    pub fn abs(&self, scale: u32) -> BigDec {
        self.re
            .mul(&self.re, scale + 5)
            .add(&self.im.mul(&self.im, scale + 5))
            .sqrt(scale)
            .expect("sum of squares is nonnegative")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
    const E_100: &str = "2.7182818284590452353602874713526624977572470936999595749669676277240766303535475945713821785251664274";
    const SQRT2_100: &str = "1.4142135623730950488016887242096980785696718753769480731766797379907324784621070388503875343276415727";

    #[test]
    fn parse_and_print_round_trip() {
        let (v, digits) = BigDec::parse("-12.3450", 6).unwrap();
        assert_eq!(digits, 4);
        assert_eq!(v.to_fixed_string(4), "-12.3450");
        let (w, _) = BigDec::parse("0.5", 3).unwrap();
        assert_eq!(w.to_fixed_string(1), "0.5");
    }

    #[test]
    fn pi_matches_reference_digits() {
        let p = pi(95);
        let (reference, _) = BigDec::parse(PI_100, 95).unwrap();
        let diff = p.sub(&reference).abs();
        assert!(diff.cmp_val(&BigDec::eps(93, 95)) == Ordering::Less);
    }

    #[test]
    fn exp_one_matches_reference() {
        let e = exp(&BigDec::one(90), 90);
        let (reference, _) = BigDec::parse(E_100, 90).unwrap();
        assert!(e.sub(&reference).abs().cmp_val(&BigDec::eps(87, 90)) == Ordering::Less);
    }

    #[test]
    fn sqrt_two_matches_reference() {
        let s = BigDec::from_int(2, 90).sqrt(90).unwrap();
        let (reference, _) = BigDec::parse(SQRT2_100, 90).unwrap();
        assert!(s.sub(&reference).abs().cmp_val(&BigDec::eps(88, 90)) == Ordering::Less);
    }

    #[test]
    fn sin_cos_pythagoras_and_known_values() {
        let x = BigDec::from_rational(&BigRational::new(7.into(), 3.into()), 50);
        let (s, c) = sin_cos(&x, 45);
        let one = s.mul(&s, 45).add(&c.mul(&c, 45));
        assert!(one.sub(&BigDec::one(45)).abs().cmp_val(&BigDec::eps(40, 45)) == Ordering::Less);
        // sin(pi) == 0, cos(pi) == -1
        let (sp, cp) = sin_cos(&pi(50), 45);
        assert!(sp.abs().cmp_val(&BigDec::eps(40, 45)) == Ordering::Less);
        assert!(cp.add(&BigDec::one(45)).abs().cmp_val(&BigDec::eps(40, 45)) == Ordering::Less);
    }

    #[test]
    fn division_rounds_half_away_from_zero() {
        let a = BigDec::from_int(1, 2);
        let b = BigDec::from_int(8, 2);
        let q = a.div(&b, 1).unwrap();
        assert_eq!(q.to_fixed_string(1), "0.1"); // 0.125 -> 0.1 at one digit? (0.125 rounds to 0.13 at 2)
        let q2 = a.div(&b, 2).unwrap();
        assert_eq!(q2.to_fixed_string(2), "0.13");
    }
}
