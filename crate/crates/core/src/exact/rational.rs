//! Rational scalars and their `"p/q"` string form.
//!
//! `num_rational::BigRational` already maintains the canonical form we need
//! (reduced, positive denominator), so the type is an alias and this module
//! only adds the string codec used by every JSON schema in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Parse `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else if s.contains('.') {
        // Decimal literals are accepted for convenience: "0.5" == 1/2.
        let neg = s.starts_with('-');
        let body = s.trim_start_matches(['-', '+']);
        let (int_part, frac_part) = body.split_once('.')?;
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_part.is_empty() && frac_part.is_empty())
        {
            return None;
        }
        let digits = format!("{}{}", int_part, frac_part);
        let n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = BigRational::new(n, d);
        Some(if neg { -r } else { r })
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Render as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Denominator as a positive integer.
pub fn denominator(r: &Rational) -> BigInt {
    r.denom().clone()
}

/// `sqrt(r)` when `r` is the square of a rational, `None` otherwise.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}
