//! Exact scalar arithmetic: arbitrary-precision rationals, symbol-basis
//! reals, and real quadratic field elements.

pub mod quad;
pub mod rational;
pub mod symbol;

pub use quad::QuadNum;
pub use rational::{format_rational, parse_rational, Rational};
pub use symbol::{SymReal, Symbol, SymbolBasis};
