//! File schemas: lattice bases and half-plane points as JSON.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use sgon_core::exact::quad::QuadNum;
use sgon_core::exact::rational::parse_rational;
use sgon_core::exact::symbol::{SymReal, SymbolBasis};
use sgon_core::planar::tau::Tau;
use sgon_core::sparse::lattice::LatticeBasis;

/// Errors with distinct exit codes: parse/schema problems exit 1, domain
/// problems exit 2, internal invariant violations exit 3.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Schema(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Schema(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {}", m),
            CliError::Schema(m) => write!(f, "schema error: {}", m),
            CliError::Domain(m) => write!(f, "domain error: {}", m),
            CliError::Internal(m) => write!(f, "internal error: {}", m),
        }
    }
}

/// Map library errors onto the exit-code classes.
pub fn from_core(e: sgon_core::Error) -> CliError {
    use sgon_core::Error::*;
    match e {
        DegenerateNorm | CertificateInvalid(_) => CliError::Internal(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

#[derive(Deserialize)]
struct SymbolRepr {
    name: String,
    approx: String,
}

#[derive(Deserialize)]
struct LatticeRepr {
    symbols: Vec<SymbolRepr>,
    n: usize,
    /// `matrix[r][c]` is the coefficient vector of entry (r, c) over the
    /// symbol list.
    matrix: Vec<Vec<Vec<String>>>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Parse(format!(
            "{}: line {}, column {}: {}",
            path.display(),
            e.line(),
            e.column(),
            e
        ))
    })
}

/// Parse a lattice file, injecting the unit symbol when absent.
pub fn parse_lattice_file(path: &Path, precision: u32) -> Result<LatticeBasis, CliError> {
    let repr: LatticeRepr = read_json(path)?;
    let had_unit = repr.symbols.first().map(|s| s.name == "1").unwrap_or(false);
    if !had_unit && repr.symbols.iter().any(|s| s.name == "1") {
        return Err(CliError::Schema(
            "the unit symbol `1` must come first in the symbol list".into(),
        ));
    }
    let pairs: Vec<(String, String)> = repr
        .symbols
        .into_iter()
        .map(|s| (s.name, s.approx))
        .collect();
    let basis = SymbolBasis::new(pairs).map_err(|e| CliError::Schema(e.to_string()))?;
    let m = basis.len();

    if repr.n == 0 || repr.matrix.len() != repr.n {
        return Err(CliError::Schema(format!(
            "matrix has {} rows, expected n = {}",
            repr.matrix.len(),
            repr.n
        )));
    }
    let mut entries = Vec::with_capacity(repr.n * repr.n);
    for (r, row) in repr.matrix.iter().enumerate() {
        if row.len() != repr.n {
            return Err(CliError::Schema(format!(
                "row {} has {} entries, expected {}",
                r,
                row.len(),
                repr.n
            )));
        }
        for (c, coeffs) in row.iter().enumerate() {
            let expected = if had_unit { m } else { m - 1 };
            if coeffs.len() != expected {
                return Err(CliError::Schema(format!(
                    "entry ({}, {}) has {} coefficients, expected {}",
                    r,
                    c,
                    coeffs.len(),
                    expected
                )));
            }
            let mut parsed = Vec::with_capacity(m);
            if !had_unit {
                parsed.push(num_rational::BigRational::from_integer(0.into()));
            }
            for s in coeffs {
                parsed.push(parse_rational(s).ok_or_else(|| {
                    CliError::Schema(format!(
                        "entry ({}, {}): `{}` is not a rational",
                        r, c, s
                    ))
                })?);
            }
            entries.push(
                SymReal::new(basis.clone(), parsed)
                    .map_err(|e| CliError::Schema(e.to_string()))?,
            );
        }
    }
    LatticeBasis::new(basis, entries, precision).map_err(from_core)
}

#[derive(Deserialize)]
struct TauRepr {
    #[serde(rename = "D")]
    d: u64,
    a: [String; 2],
    b: [String; 2],
}

pub fn parse_tau_file(path: &Path) -> Result<Tau, CliError> {
    let repr: TauRepr = read_json(path)?;
    let quad = |pair: &[String; 2], which: &str| -> Result<QuadNum, CliError> {
        let p = parse_rational(&pair[0]).ok_or_else(|| {
            CliError::Schema(format!("{}: `{}` is not a rational", which, pair[0]))
        })?;
        let q = parse_rational(&pair[1]).ok_or_else(|| {
            CliError::Schema(format!("{}: `{}` is not a rational", which, pair[1]))
        })?;
        QuadNum::new(p, q, repr.d).map_err(from_core)
    };
    let a = quad(&repr.a, "a")?;
    let b = quad(&repr.b, "b")?;
    Tau::new(a, b).map_err(from_core)
}
