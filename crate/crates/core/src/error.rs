use thiserror::Error;

/// Errors surfaced by the exact and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol `{symbol}` stores {available} fraction digits but {requested} were requested")]
    InsufficientApproximation {
        symbol: String,
        available: usize,
        requested: u32,
    },

    #[error("sign could not be certified at precision {precision}: |value| < 10^-{threshold}")]
    AmbiguousSign { precision: u32, threshold: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate field norm p^2 - q^2 D = 0 (internal invariant violation)")]
    DegenerateNorm,

    #[error("operands live in different quadratic fields (D = {left} vs D = {right})")]
    UnsupportedFieldTower { left: u64, right: u64 },

    #[error("discriminant {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("coefficient vector has length {got}, symbol basis has {expected} symbols")]
    BasisMismatch { expected: usize, got: usize },

    #[error("basis matrix is singular: {0}")]
    SingularBasis(String),

    #[error("matrix is numerically singular at working precision {precision}")]
    NumericallySingular { precision: u32 },

    #[error("dimension {n} exceeds the configured cap {cap}")]
    DimensionCapExceeded { n: usize, cap: usize },

    #[error("enumeration box of {nodes} nodes exceeds the budget {budget}")]
    BoxTooLarge { nodes: u128, budget: u128 },

    #[error("point is not in the upper half-plane")]
    NotUpperHalfPlane,

    #[error("point is not reduced to the fundamental domain")]
    NotReduced,

    #[error("lattice is not axis-aligned rectangular-compatible: d(L) = {d} > n = {n}")]
    NotAxisAlignedVR { d: usize, n: usize },

    #[error("certificate fails its exact identities: {0}")]
    CertificateInvalid(String),

    #[error("{terms} series terms cannot reach 10^-{precision}: heuristic bound {bound}")]
    TooFewTermsForPrecision {
        terms: usize,
        precision: u32,
        bound: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
