//! Shared helpers for unit tests: terse construction of symbol-basis values
//! and lattice bases over the standard symbol table.

use std::sync::Arc;

use crate::exact::rational::parse_rational;
use crate::exact::symbol::{SymReal, SymbolBasis};
use crate::sparse::lattice::LatticeBasis;

/// Parse "2*sqrt3 -1*sqrt5", "pi", "-1/2", "0" into a `SymReal`.
pub fn sym(basis: &Arc<SymbolBasis>, spec: &str) -> SymReal {
    let mut v = SymReal::zero(basis.clone());
    for term in spec.split_whitespace() {
        match term.split_once('*') {
            Some((c, name)) => {
                let idx = basis
                    .index_of(name)
                    .unwrap_or_else(|| panic!("unknown symbol {}", name));
                v = v.add(&SymReal::from_symbol(
                    basis.clone(),
                    idx,
                    parse_rational(c).unwrap(),
                ));
            }
            None => {
                if let Some(r) = parse_rational(term) {
                    v = v.add(&SymReal::from_rational(basis.clone(), r));
                } else {
                    let (sign, name) = match term.strip_prefix('-') {
                        Some(rest) => ("-1", rest),
                        None => ("1", term),
                    };
                    let idx = basis
                        .index_of(name)
                        .unwrap_or_else(|| panic!("unknown symbol {}", name));
                    v = v.add(&SymReal::from_symbol(
                        basis.clone(),
                        idx,
                        parse_rational(sign).unwrap(),
                    ));
                }
            }
        }
    }
    v
}

/// Build a lattice basis over the standard symbol table at 50 digits.
pub fn lattice(rows: &[&[&str]]) -> LatticeBasis {
    let b = SymbolBasis::standard();
    let entries: Vec<SymReal> = rows
        .iter()
        .flat_map(|r| r.iter().map(|s| sym(&b, s)))
        .collect();
    LatticeBasis::new(b, entries, 50).unwrap()
}

use crate::exact::quad::QuadNum;
use crate::planar::tau::Tau;

/// Build a Tau from rational-string parts: a = ap + aq*sqrt(d), b likewise.
pub fn tau(ap: &str, aq: &str, bp: &str, bq: &str, d: u64) -> Tau {
    Tau::new(
        QuadNum::new(parse_rational(ap).unwrap(), parse_rational(aq).unwrap(), d).unwrap(),
        QuadNum::new(parse_rational(bp).unwrap(), parse_rational(bq).unwrap(), d).unwrap(),
    )
    .unwrap()
}
