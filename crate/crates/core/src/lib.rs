//! Exact enumeration of peakless Motzkin paths.
//!
//! A Motzkin path uses up, down and flat steps, starts at the origin,
//! never goes below the axis and ends on it. A *peak* is an up-step
//! immediately followed by a down-step. This crate counts the paths
//! without peaks several independent ways and checks that they agree:
//!
//! * [`paths`]: path predicates, the peak-avoiding automaton and a
//!   brute-force enumerator used as ground truth;
//! * [`series`]: truncated integer power series and polynomials;
//! * [`counting`]: the functional equation, the recurrence, the
//!   bounded-height continued fraction, determinant quotients, the
//!   automaton DP and height statistics;
//! * [`asymptotics`]: leading-order growth and average-height estimates
//!   with convergence reports;
//! * [`verify`]: the cross-engine agreement suite driven by the CLI.

pub mod asymptotics;
pub mod counting;
pub mod error;
pub mod fixtures;
pub mod paths;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
