//! Unbounded peakless counts: the quadratic for `F = s2 / z`, the kernel
//! root, end-level series and the polynomial-coefficient recurrence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{CountSequence, Method};
use crate::error::{Error, Result};
use crate::series::{IntPolynomial, TruncatedSeries};

/// `m(0)..m(3)` seeding the recurrence.
pub const RECURRENCE_INITIAL: [u64; 4] = [1, 1, 1, 2];

/// `1 - z + z^2`
fn kernel_diagonal() -> IntPolynomial {
    IntPolynomial::new([1, -1, 1])
}

/// The series `F = sum m(n) z^n`, solved from
/// `z^2 F^2 - (1 - z + z^2) F + 1 = 0` as the fixed point of
/// `F <- (1 + z^2 F^2) / (1 - z + z^2)`.
///
/// The map is applied in place, one coefficient at a time: `[z^n]` of the
/// image only reads coefficients below `n`, so a single sweep reaches the
/// fixed point. One full application of the map then confirms it.
pub fn peakless_series_raw(order: usize) -> Result<TruncatedSeries> {
    let mut f: Vec<BigInt> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = BigInt::from(u8::from(n == 0));
        if n >= 1 {
            c += &f[n - 1];
        }
        if n >= 2 {
            c -= &f[n - 2];
            let m = n - 2;
            for i in 0..=m / 2 {
                let t = &f[i] * &f[m - i];
                if 2 * i == m {
                    c += t;
                } else {
                    c += t * 2;
                }
            }
        }
        f.push(c);
    }
    let f = TruncatedSeries::new(f, order);
    let inv = kernel_diagonal().to_series(order).inverse()?;
    let one = TruncatedSeries::one(order);
    let image = &(&one + &(&f * &f).shift(2)) * &inv;
    if image == f {
        Ok(f)
    } else {
        Err(Error::NoFixedPoint { order })
    }
}

pub fn peakless_series(n_max: usize) -> Result<CountSequence> {
    CountSequence::from_series(&peakless_series_raw(n_max)?, Method::FunctionalEquation)
}

/// `z^2 F^2 - (1 - z + z^2) F + 1`; vanishes for the true `F`.
pub fn functional_residual(f: &TruncatedSeries) -> TruncatedSeries {
    let order = f.order();
    let quad = (f * f).shift(2);
    let lin = &kernel_diagonal().to_series(order) * f;
    &(&quad - &lin) + &TruncatedSeries::one(order)
}

/// `m(0..=n_max)` from
/// `(n+6) m(n+4) = (2n+9) m(n+3) + (n+3) m(n+2) + (2n+3) m(n+1) - n m(n)`.
///
/// Every division must be exact; a remainder is reported as an error.
pub fn peakless_recurrence(n_max: usize) -> Result<CountSequence> {
    let mut m: Vec<BigInt> = RECURRENCE_INITIAL
        .iter()
        .take(n_max + 1)
        .map(|&v| BigInt::from(v))
        .collect();
    for n in 0..(n_max + 1).saturating_sub(4) {
        let k = |c: usize| BigInt::from(c);
        let numer = k(2 * n + 9) * &m[n + 3] + k(n + 3) * &m[n + 2] + k(2 * n + 3) * &m[n + 1]
            - k(n) * &m[n];
        let (q, r) = numer.div_rem(&k(n + 6));
        if !r.is_zero() {
            return Err(Error::InexactRecurrence {
                n: n + 4,
                remainder: r.to_string(),
            });
        }
        m.push(q);
    }
    let values = m.iter().map(super::to_count).collect::<Result<Vec<_>>>()?;
    Ok(CountSequence {
        values,
        method: Method::PRecurrence,
    })
}

/// Peakless paths ending at level `k`: `s2^(k+1) / z = z^k F^(k+1)`.
pub fn end_level_series(k: usize, order: usize) -> Result<TruncatedSeries> {
    let f = peakless_series_raw(order)?;
    let mut acc = f.clone();
    for _ in 0..k {
        acc = &acc * &f;
    }
    Ok(acc.shift(k))
}

/// The power-series kernel root `s2 = z F`.
pub fn kernel_root_series(order: usize) -> Result<TruncatedSeries> {
    Ok(peakless_series_raw(order)?.shift(1))
}

/// `z u^2 + (z - z^2 - 1) u + z` evaluated at the series `u`.
pub fn kernel_residual(u: &TruncatedSeries) -> TruncatedSeries {
    let order = u.order();
    let middle = &(-&kernel_diagonal()).to_series(order) * u;
    let z = TruncatedSeries::monomial(BigInt::one(), 1, order);
    &(&(u * u).shift(1) + &middle) + &z
}

/// `z * s1` for the other kernel root, from `s1 + s2 = (1 - z + z^2) / z`.
/// The product with `s2` equals `z` exactly when `s1 s2 = 1`.
pub fn reciprocal_root_times_z(s2: &TruncatedSeries) -> TruncatedSeries {
    &kernel_diagonal().to_series(s2.order()) - &s2.shift(1)
}

/// `z h_k + (z - z^2 - 1) h_{k-1} + z h_{k-2}` for end-level series
/// `h_j`; requires `k >= 2`.
pub fn level_recursion_residual(k: usize, order: usize) -> Result<TruncatedSeries> {
    assert!(k >= 2, "level recursion needs k >= 2");
    let hk = end_level_series(k, order)?;
    let hk1 = end_level_series(k - 1, order)?;
    let hk2 = end_level_series(k - 2, order)?;
    let middle = &(-&kernel_diagonal()).to_series(order) * &hk1;
    Ok(&(&hk.shift(1) + &middle) + &hk2.shift(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{brute_force_count_capped, PathConstraints};
    use num_bigint::BigUint;

    fn counts(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn first_terms_from_both_engines() {
        let want = counts(&[1, 1, 1, 2, 4, 8, 17]);
        assert_eq!(peakless_series(6).unwrap().values, want);
        assert_eq!(peakless_recurrence(6).unwrap().values, want);
    }

    #[test]
    fn recurrence_first_step() {
        // n = 0: (9*2 + 3*1 + 3*1 - 0) / 6
        assert_eq!(
            peakless_recurrence(4).unwrap().values[4],
            BigUint::from(4u32)
        );
    }

    #[test]
    fn short_requests() {
        assert_eq!(peakless_recurrence(0).unwrap().values, counts(&[1]));
        assert_eq!(peakless_recurrence(2).unwrap().values, counts(&[1, 1, 1]));
        assert_eq!(peakless_series(0).unwrap().values, counts(&[1]));
    }

    #[test]
    fn residuals_vanish() {
        let f = peakless_series_raw(40).unwrap();
        assert!(functional_residual(&f).is_zero());
        let s2 = kernel_root_series(40).unwrap();
        assert!(kernel_residual(&s2).is_zero());
        let zs1 = reciprocal_root_times_z(&s2);
        assert_eq!(&zs1 * &s2, TruncatedSeries::monomial(BigInt::one(), 1, 40));
    }

    #[test]
    fn kernel_root_head() {
        let s2 = kernel_root_series(5).unwrap();
        let c: Vec<i64> = s2
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(c, [0, 1, 1, 1, 2, 4]);
    }

    #[test]
    fn end_levels_match_brute_force() {
        assert_eq!(
            end_level_series(0, 12).unwrap(),
            peakless_series_raw(12).unwrap()
        );
        let h1 = end_level_series(1, 12).unwrap();
        assert_eq!(h1.coeffs()[1], BigInt::one());
        for k in 1..=3 {
            let hk = end_level_series(k, 12).unwrap();
            for n in 0..=12 {
                let c = PathConstraints::peakless().with_end_level(k);
                let bf = brute_force_count_capped(n, c, 16).unwrap();
                assert_eq!(hk.coeffs()[n], BigInt::from(bf), "k = {k}, n = {n}");
            }
        }
    }

    #[test]
    fn level_recursion_holds() {
        for k in 2..=6 {
            assert!(level_recursion_residual(k, 30).unwrap().is_zero());
        }
    }

    #[test]
    fn series_matches_brute_force_at_ten() {
        let f = peakless_series(10).unwrap();
        let bf = brute_force_count_capped(10, PathConstraints::peakless(), 16).unwrap();
        assert_eq!(f.values[10], bf);
    }

    #[test]
    fn recurrence_is_exact_far_out() {
        let m = peakless_recurrence(600).unwrap();
        let f = peakless_series(120).unwrap();
        assert_eq!(&m.values[..=120], &f.values[..]);
    }
}
