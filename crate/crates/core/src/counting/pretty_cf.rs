//! The continued fraction
//! `1 + z/(1 - z/(1 - z/(1 - z^3/(1 - z/(1 - z/(1 - z^3/(1 - ...)))))))`
//! for the unbounded series. The numerator pattern is data so it can be
//! audited: exponent 1 for the head, then `PERIOD` repeating.

use num_bigint::BigInt;
use num_traits::One;

use super::unbounded::peakless_series_raw;
use crate::error::Result;
use crate::series::TruncatedSeries;

pub const PRETTY_CF_HEAD: usize = 1;
pub const PRETTY_CF_PERIOD: [usize; 3] = [1, 1, 3];

/// Exponent of the `k`-th numerator (`k = 0` is the head).
pub fn pretty_cf_numerator_exponent(k: usize) -> usize {
    match k {
        0 => PRETTY_CF_HEAD,
        _ => PRETTY_CF_PERIOD[(k - 1) % PRETTY_CF_PERIOD.len()],
    }
}

/// Depth-`d` truncation (`d` numerators, innermost denominator `1`).
pub fn pretty_cf_series(depth: usize, order: usize) -> Result<TruncatedSeries> {
    assert!(depth >= 1, "depth must be at least 1");
    let one = TruncatedSeries::one(order);
    let numerator =
        |k| TruncatedSeries::monomial(BigInt::one(), pretty_cf_numerator_exponent(k), order);
    let mut tail = one.clone();
    for k in (1..depth).rev() {
        tail = &one - &(&numerator(k) * &tail.inverse()?);
    }
    Ok(&one + &(&numerator(0) * &tail.inverse()?))
}

/// Largest `M <= order` such that coefficients `0..=M` of the depth-`d`
/// truncation equal `m(0..=M)`.
pub fn pretty_cf_check(depth: usize, order: usize) -> Result<Option<usize>> {
    let target = peakless_series_raw(order)?;
    Ok(pretty_cf_series(depth, order)?.agreement_order(&target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerator_pattern() {
        let e: Vec<usize> = (0..8).map(pretty_cf_numerator_exponent).collect();
        assert_eq!(e, [1, 1, 1, 3, 1, 1, 3, 1]);
    }

    #[test]
    fn depth_one_is_one_plus_z() {
        let s = pretty_cf_series(1, 4).unwrap();
        assert_eq!(s, TruncatedSeries::new([1, 1], 4));
        assert_eq!(pretty_cf_check(1, 20).unwrap(), Some(1));
    }

    #[test]
    fn agreement_grows() {
        let orders: Vec<usize> = (1..=18)
            .map(|d| pretty_cf_check(d, 60).unwrap().unwrap())
            .collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]), "{orders:?}");
        assert!(orders[6] >= 7, "{orders:?}");
        for d in 0..15 {
            assert!(orders[d + 3] > orders[d], "{orders:?}");
        }
    }
}
