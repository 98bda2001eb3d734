use thiserror::Error;

/// Errors raised by the enumeration engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("oracle limit: brute force requested for n = {n}, cap is {cap}")]
    OracleLimit { n: usize, cap: usize },

    #[error("path dips below level 0 at step {index}")]
    BelowAxis { index: usize },

    #[error("invalid step character {0:?} (expected U, D or F)")]
    InvalidStep(char),

    #[error("series inversion needs a unit constant term, got {0}")]
    NonUnitConstant(String),

    #[error("inexact division in recurrence at n = {n}: remainder {remainder}")]
    InexactRecurrence { n: usize, remainder: String },

    #[error("negative coefficient {0} where a count was expected")]
    NegativeCount(String),

    #[error("functional-equation sweep is not a fixed point at order {order}")]
    NoFixedPoint { order: usize },

    #[error("determinant route is undefined for ell = 0; use the continued fraction")]
    DeterminantBoundZero,

    #[error("{what} out of reach: n = {n} exceeds limit {limit}")]
    ResourceLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fixture parse error on line {line}: {msg}")]
    Fixture { line: usize, msg: String },

    #[error("export failed: {0}")]
    Export(String),
}

pub type Result<T> = std::result::Result<T, Error>;
