use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::bounded::bounded_count_dp;

/// Height statistics of the peakless Motzkin paths of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightStats {
    pub n: usize,
    /// `distribution[h]` = number of paths of height exactly `h`; trailing
    /// zero heights are dropped.
    pub distribution: Vec<BigUint>,
    /// `A_{n,ell}` for `ell = 0..=n/2`; the last entry is `m(n)`.
    pub bounded_counts: Vec<BigUint>,
    /// Tail-sum form `sum_ell (m(n) - A_{n,ell}) / m(n)`.
    pub expected_height: BigRational,
}

impl HeightStats {
    pub fn total(&self) -> &BigUint {
        self.bounded_counts.last().expect("at least A_{n,0}")
    }

    /// Moment form `sum_h h * dist[h] / m(n)`; must equal
    /// [`HeightStats::expected_height`].
    pub fn moment_expectation(&self) -> BigRational {
        let num: BigUint = self
            .distribution
            .iter()
            .enumerate()
            .map(|(h, c)| c * h)
            .sum();
        BigRational::new(BigInt::from(num), BigInt::from(self.total().clone()))
    }

    pub fn expected_height_float(&self) -> f64 {
        self.expected_height.to_f64().unwrap_or(f64::NAN)
    }

    /// `"0:1 1:3  E[H]=3/4"`
    pub fn summary(&self) -> String {
        let dist: Vec<String> = self
            .distribution
            .iter()
            .enumerate()
            .map(|(h, c)| format!("{h}:{c}"))
            .collect();
        format!("{}  E[H]={}", dist.join(" "), self.expected_height)
    }
}

#[derive(Serialize)]
struct HeightStatsJson {
    n: usize,
    distribution: Vec<String>,
    expected_height: String,
    expected_height_float: f64,
}

impl HeightStats {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HeightStatsJson {
            n: self.n,
            distribution: self.distribution.iter().map(|c| c.to_string()).collect(),
            expected_height: self.expected_height.to_string(),
            expected_height_float: self.expected_height_float(),
        })
        .expect("plain data serialises")
    }
}

/// Height distribution from differences of bounded counts, one automaton
/// DP per bound.
pub fn height_distribution(n: usize) -> HeightStats {
    height_distribution_with(n, bounded_count_dp)
}

/// As [`height_distribution`] with a caller-supplied `A_{n,ell}` engine.
pub fn height_distribution_with<F>(n: usize, bounded: F) -> HeightStats
where
    F: Fn(usize, usize) -> BigUint + Sync,
{
    let top = n / 2;
    let bounded_counts: Vec<BigUint> = (0..=top)
        .into_par_iter()
        .map(|ell| bounded(n, ell))
        .collect();
    let total = bounded_counts[top].clone();

    let mut distribution = Vec::with_capacity(top + 1);
    distribution.push(bounded_counts[0].clone());
    for ell in 1..=top {
        distribution.push(&bounded_counts[ell] - &bounded_counts[ell - 1]);
    }
    while distribution.len() > 1 && distribution.last().is_some_and(Zero::is_zero) {
        distribution.pop();
    }

    let tail: BigUint = bounded_counts[..top].iter().map(|a| &total - a).sum();
    let expected_height = BigRational::new(BigInt::from(tail), BigInt::from(total));

    HeightStats {
        n,
        distribution,
        bounded_counts,
        expected_height,
    }
}
