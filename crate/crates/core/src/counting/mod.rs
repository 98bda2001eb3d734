//! Exact counting engines.
//!
//! Each engine reaches the same numbers by a different route: the quadratic
//! functional equation, the polynomial-coefficient recurrence, the
//! automaton dynamic program, the bounded-height continued fraction and
//! the tridiagonal determinant quotient.

mod bounded;
mod height;
mod pretty_cf;
mod unbounded;

pub use bounded::{
    bounded_count_dp, bounded_count_dp_row, bounded_series_cf, bounded_series_det,
    determinant_poly, strip_determinant_poly, uniform_cramer_series, BoundedCountTable,
    BoundedMethod,
};
pub use height::{height_distribution, height_distribution_with, HeightStats};
pub use pretty_cf::{
    pretty_cf_check, pretty_cf_numerator_exponent, pretty_cf_series, PRETTY_CF_HEAD,
    PRETTY_CF_PERIOD,
};
pub use unbounded::{
    end_level_series, functional_residual, kernel_residual, kernel_root_series,
    level_recursion_residual, peakless_recurrence, peakless_series, peakless_series_raw,
    reciprocal_root_times_z, RECURRENCE_INITIAL,
};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Which engine produced a [`CountSequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    FunctionalEquation,
    PRecurrence,
    AutomatonDP,
    BruteForce,
    Convolution,
}

/// Counts `a(0)..=a(N)` together with the engine that computed them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub values: Vec<BigUint>,
    pub method: Method,
}

impl CountSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub(crate) fn from_series(series: &TruncatedSeries, method: Method) -> Result<Self> {
        let values = series
            .coeffs()
            .iter()
            .map(to_count)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values, method })
    }
}

pub(crate) fn to_count(c: &BigInt) -> Result<BigUint> {
    c.to_biguint()
        .ok_or_else(|| Error::NegativeCount(c.to_string()))
}

/// Motzkin numbers `M_0..=M_N` from
/// `M_{n+1} = M_n + sum_{k=0}^{n-1} M_k M_{n-1-k}`.
pub fn motzkin_count(n_max: usize) -> CountSequence {
    let mut m: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    m.push(BigUint::one());
    for n in 0..n_max {
        let mut next = m[n].clone();
        for k in 0..n {
            next += &m[k] * &m[n - 1 - k];
        }
        m.push(next);
    }
    CountSequence {
        values: m,
        method: Method::Convolution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motzkin_numbers() {
        let m = motzkin_count(10);
        let want: Vec<BigUint> = [1u64, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(m.values, want);
        assert_eq!(motzkin_count(0).values, vec![BigUint::one()]);
    }
}
