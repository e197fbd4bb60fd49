//! Symbol-basis reals.
//!
//! A [`SymbolBasis`] declares an ordered list of real symbols that are
//! *trusted* to be linearly independent over the rationals; every exactness
//! guarantee in this crate is conditional on that declaration. The first
//! symbol is always the constant one. A [`SymReal`] is a rational coefficient
//! vector over such a basis; addition and rational scaling are exact, and
//! numeric evaluation goes through the stored decimal approximations with
//! guard digits.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, Rational};

/// Guard digits added on top of a requested precision before any numeric
/// evaluation.
pub const GUARD_DIGITS: u32 = 10;

/// Default precision (decimal digits) for sign decisions and report values.
pub const DEFAULT_PRECISION: u32 = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub approx: String,
}

#[derive(Debug, PartialEq, Eq)]
pub struct SymbolBasis {
    symbols: Vec<Symbol>,
}

const SQRT2: &str = "1.41421356237309504880168872420969807856967187537694807317667973799073247846210703885038753432764157273501384623";
const SQRT3: &str = "1.73205080756887729352744634150587236694280525381038062805580697945193301690880003708114618675724857567562614142";
const SQRT5: &str = "2.23606797749978969640917366873127623544061835961152572427089724541052092563780489941441440837878227496950817615";
const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";
const E: &str = "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759457138217852516642742746639193";

impl SymbolBasis {
    /// Build a basis from `(name, approx)` pairs. The unit symbol `1` is
    /// prepended when absent; names must be unique.
    pub fn new(pairs: Vec<(String, String)>) -> Result<Arc<Self>> {
        let mut symbols: Vec<Symbol> = Vec::with_capacity(pairs.len() + 1);
        if pairs.first().map(|(n, _)| n.as_str()) != Some("1") {
            symbols.push(Symbol {
                name: "1".into(),
                approx: "1.0".into(),
            });
        }
        for (name, approx) in pairs {
            if name == "1" {
                if symbols.iter().any(|s| s.name == "1") {
                    return Err(Error::InvalidArgument("duplicate symbol `1`".into()));
                }
                if symbols.is_empty() {
                    symbols.push(Symbol { name, approx });
                    continue;
                }
            }
            if BigDec::parse(&approx, 5).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "symbol `{}` has unparseable approximation `{}`",
                    name, approx
                )));
            }
            if symbols.iter().any(|s| s.name == name) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate symbol `{}`",
                    name
                )));
            }
            symbols.push(Symbol { name, approx });
        }
        Ok(Arc::new(SymbolBasis { symbols }))
    }

    /// The shipped table: 1, sqrt2, sqrt3, sqrt5, pi, e at 110 fraction digits.
    pub fn standard() -> Arc<Self> {
        SymbolBasis::new(vec![
            ("sqrt2".into(), SQRT2.into()),
            ("sqrt3".into(), SQRT3.into()),
            ("sqrt5".into(), SQRT5.into()),
            ("pi".into(), PI.into()),
            ("e".into(), E.into()),
        ])
        .expect("shipped table is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    fn fraction_digits(&self, i: usize) -> usize {
        match self.symbols[i].approx.split_once('.') {
            Some((_, frac)) => frac.len(),
            None => 0,
        }
    }

    /// Numeric value of symbol `i` with `precision` requested digits.
    pub fn eval_symbol(&self, i: usize, precision: u32) -> Result<BigDec> {
        let available = self.fraction_digits(i);
        if i > 0 && (available as u64) < precision as u64 {
            return Err(Error::InsufficientApproximation {
                symbol: self.symbols[i].name.clone(),
                available,
                requested: precision,
            });
        }
        let scale = precision + GUARD_DIGITS;
        let (v, _) = BigDec::parse(&self.symbols[i].approx, scale).ok_or_else(|| {
            Error::InvalidArgument(format!("bad approximation for `{}`", self.symbols[i].name))
        })?;
        Ok(v)
    }
}

/// Check two bases for identity (pointer fast path, then value equality).
pub fn same_basis(a: &Arc<SymbolBasis>, b: &Arc<SymbolBasis>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A real number as rational coordinates over a shared [`SymbolBasis`].
#[derive(Clone, Debug)]
pub struct SymReal {
    basis: Arc<SymbolBasis>,
    coeffs: Vec<Rational>,
}

impl SymReal {
    pub fn new(basis: Arc<SymbolBasis>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::BasisMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Ok(SymReal { basis, coeffs })
    }

    pub fn zero(basis: Arc<SymbolBasis>) -> Self {
        let coeffs = vec![BigRational::zero(); basis.len()];
        SymReal { basis, coeffs }
    }

    pub fn from_rational(basis: Arc<SymbolBasis>, r: Rational) -> Self {
        let mut v = SymReal::zero(basis);
        v.coeffs[0] = r;
        v
    }

    pub fn from_symbol(basis: Arc<SymbolBasis>, index: usize, coeff: Rational) -> Self {
        let mut v = SymReal::zero(basis);
        v.coeffs[index] = coeff;
        v
    }

    pub fn basis(&self) -> &Arc<SymbolBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) when the value is the rational `r` (only the unit coordinate
    /// is populated).
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &SymReal) -> SymReal {
        assert!(same_basis(&self.basis, &rhs.basis), "symbol basis mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        SymReal {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &SymReal) -> SymReal {
        assert!(same_basis(&self.basis, &rhs.basis), "symbol basis mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        SymReal {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> SymReal {
        SymReal {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> SymReal {
        SymReal {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Numeric evaluation: `sum coeff_s * approx_s` at `precision + 10` guard
    /// digits.
    pub fn eval(&self, precision: u32) -> Result<BigDec> {
        if precision < 16 {
            return Err(Error::InvalidArgument(format!(
                "precision {} < 16",
                precision
            )));
        }
        let scale = precision + GUARD_DIGITS;
        let mut acc = BigDec::zero(scale);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = self.basis.eval_symbol(i, precision)?;
            acc = acc.add(&s.mul_rational(c, scale));
        }
        Ok(acc)
    }

    /// Exact sign where the coefficient structure allows it, numeric sign with
    /// an ambiguity guard otherwise.
    pub fn sign(&self, precision: u32) -> Result<i8> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_positive() { 1 } else { -1 });
        }
        let v = self.eval(precision)?;
        let threshold = precision.saturating_sub(5);
        if v.abs().cmp_val(&BigDec::eps(threshold, v.scale())) == std::cmp::Ordering::Less {
            return Err(Error::AmbiguousSign {
                precision,
                threshold,
            });
        }
        Ok(v.signum())
    }

    /// |value| evaluated numerically.
    pub fn abs_eval(&self, precision: u32) -> Result<BigDec> {
        Ok(self.eval(precision)?.abs())
    }
}

impl PartialEq for SymReal {
    fn eq(&self, other: &Self) -> bool {
        same_basis(&self.basis, &other.basis) && self.coeffs == other.coeffs
    }
}

impl fmt::Display for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = if i == 0 {
                format_rational(c)
            } else if c.is_one() {
                self.basis.name(i).to_string()
            } else if (-c).is_one() {
                format!("-{}", self.basis.name(i))
            } else {
                format!("{}*{}", format_rational(c), self.basis.name(i))
            };
            if first {
                write!(f, "{}", term)?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", term)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn standard_basis_has_unit_first() {
        let b = SymbolBasis::standard();
        assert_eq!(b.name(0), "1");
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn eval_identity_coefficient() {
        let b = SymbolBasis::standard();
        let one = SymReal::from_rational(b, r("1"));
        let v = one.eval(20).unwrap();
        assert_eq!(v.to_fixed_string(5), "1.00000");
    }

    #[test]
    fn eval_two_sqrt3_minus_sqrt5() {
        // Oracle value computed with 130-digit decimal arithmetic.
        let b = SymbolBasis::standard();
        let i3 = b.index_of("sqrt3").unwrap();
        let i5 = b.index_of("sqrt5").unwrap();
        let x = SymReal::from_symbol(b.clone(), i3, r("2"))
            .add(&SymReal::from_symbol(b, i5, r("-1")));
        let v = x.eval(20).unwrap();
        assert_eq!(v.to_fixed_string(20), "1.22803363763796489065");
    }

    #[test]
    fn eval_zero_vector() {
        let b = SymbolBasis::standard();
        let z = SymReal::zero(b);
        assert!(z.eval(20).unwrap().is_zero());
        assert_eq!(z.sign(20).unwrap(), 0);
    }

    #[test]
    fn insufficient_approximation_is_reported() {
        let b = SymbolBasis::new(vec![("alpha".into(), "1.41421".into())]).unwrap();
        let x = SymReal::from_symbol(b, 1, r("1"));
        match x.eval(20) {
            Err(Error::InsufficientApproximation {
                symbol, available, ..
            }) => {
                assert_eq!(symbol, "alpha");
                assert_eq!(available, 5);
            }
            other => panic!("expected InsufficientApproximation, got {:?}", other),
        }
    }

    #[test]
    fn sign_of_irrational_combination() {
        let b = SymbolBasis::standard();
        let i3 = b.index_of("sqrt3").unwrap();
        let i5 = b.index_of("sqrt5").unwrap();
        let x = SymReal::from_symbol(b.clone(), i3, r("2"))
            .add(&SymReal::from_symbol(b.clone(), i5, r("-1")));
        assert_eq!(x.sign(50).unwrap(), 1);
        assert_eq!(x.neg().sign(50).unwrap(), -1);
    }
}

#[cfg(test)]
mod concurrency_tests {
    #[test]
    fn value_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<super::SymbolBasis>();
        assert_send_sync::<super::SymReal>();
        assert_send_sync::<crate::exact::quad::QuadNum>();
        assert_send_sync::<crate::sparse::lattice::LatticeBasis>();
        assert_send_sync::<crate::intlinalg::matrix::IntMatrix>();
        assert_send_sync::<crate::planar::tau::Tau>();
    }
}
