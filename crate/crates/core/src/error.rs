//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The brute-force enumerator visited more states than its ceiling
    /// allows. Raise the ceiling explicitly rather than waiting.
    #[error("enumeration ceiling exceeded: visited more than {ceiling} states")]
    ResourceCeiling { ceiling: u64 },

    /// Bisection could not capture a sign change. With nonnegative monic
    /// skew coefficients this signals violated input assumptions.
    #[error("root bracketing failed after {expansions} expansions: f({lo:e}) = {f_lo:e}, f({hi:e}) = {f_hi:e}")]
    BracketFailure {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        expansions: u32,
    },

    #[error("polynomials over different variable counts: n = {0} vs n = {1}")]
    MismatchedN(u32, u32),

    #[error("{name} = {value} outside the valid range {range}")]
    RangeViolation {
        name: &'static str,
        value: i64,
        range: String,
    },

    #[error("unknown group family: {0}")]
    UnknownGroup(String),

    #[error("the zero polynomial has no root structure")]
    ZeroPolynomial,

    #[error("non-finite value while {0}")]
    NonFinite(&'static str),

    #[error("enhanced bounds are only derived for n = 3 and n = 4, got n = {0}")]
    UnsupportedBoundOrder(u32),

    #[error("polynomial has no numeric coefficient bindings")]
    SymbolicCoefficients,

    #[error("monotonicity violated in the mean chain at position {index}: {previous} < {current}")]
    MeanChainViolation {
        index: usize,
        previous: f64,
        current: f64,
    },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("serialization error: {0}")]
    Serialization(String),

    /// An internal cross-check failed. This indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
