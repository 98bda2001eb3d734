//! Height-bounded counts `A_{n,ell}`: continued-fraction ladder,
//! tridiagonal determinant quotient and the capped automaton DP.

use std::io;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::to_count;
use crate::error::{Error, Result};
use crate::series::{poly_divide_series, IntPolynomial, TruncatedSeries};

/// `z - z^2 - 1`, the diagonal entry of the transfer matrix.
fn diagonal() -> IntPolynomial {
    IntPolynomial::new([-1, 1, -1])
}

fn z_squared() -> IntPolynomial {
    IntPolynomial::new([0, 0, 1])
}

/// `A_ell` from `A_0 = 1/(1-z)` and `A_ell = 1 / (1 - z + z^2 - z^2 A_{ell-1})`.
pub fn bounded_series_cf(ell: usize, order: usize) -> Result<TruncatedSeries> {
    let base = IntPolynomial::new([1, -1, 1]).to_series(order);
    let mut a = IntPolynomial::new([1, -1]).to_series(order).inverse()?;
    for _ in 0..ell {
        a = (&base - &a.shift(2)).inverse()?;
    }
    Ok(a)
}

fn three_term(first: IntPolynomial, ell: i64) -> IntPolynomial {
    let (diag, zz) = (diagonal(), z_squared());
    let (mut prev, mut cur) = (IntPolynomial::one(), first);
    for _ in 0..ell {
        let next = &(&diag * &cur) - &(&zz * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Determinant `D_ell` of the `(ell+1) x (ell+1)` tridiagonal matrix with
/// diagonal `z - z^2 - 1` and off-diagonals `z`; `D_{-1} = 1`.
pub fn determinant_poly(ell: i64) -> IntPolynomial {
    assert!(ell >= -1, "determinant index must be >= -1");
    if ell == -1 {
        return IntPolynomial::one();
    }
    three_term(diagonal(), ell)
}

/// Determinant of the same matrix with its last diagonal entry replaced by
/// `z - 1`: at the top level of the strip an up-step is impossible, so the
/// `z^2` term of the diagonal drops out. Equals `D_ell + z^2 D_{ell-1}`.
pub fn strip_determinant_poly(ell: i64) -> IntPolynomial {
    assert!(ell >= -1, "determinant index must be >= -1");
    if ell == -1 {
        return IntPolynomial::one();
    }
    three_term(IntPolynomial::new([-1, 1]), ell)
}

fn normalised_quotient(
    num: IntPolynomial,
    den: IntPolynomial,
    order: usize,
) -> Result<TruncatedSeries> {
    let (num, den) = if den.constant_term().is_negative() {
        (-&num, -&den)
    } else {
        (num, den)
    };
    poly_divide_series(&-&num, &den, order)
}

/// Cramer quotient for the height-bounded generating function,
/// `-P_{ell-1} / P_ell` with `P` the strip determinant. The sign is fixed
/// by normalising the denominator's constant term to `+1`.
pub fn bounded_series_det(ell: usize, order: usize) -> Result<TruncatedSeries> {
    if ell == 0 {
        return Err(Error::DeterminantBoundZero);
    }
    let ell = ell as i64;
    normalised_quotient(
        strip_determinant_poly(ell - 1),
        strip_determinant_poly(ell),
        order,
    )
}

/// `-D_{ell-1} / D_ell` for the uniform matrix. This treats the top level
/// like an interior one and does not count height-bounded paths (already
/// at `ell = 1, n = 4` it gives 3 instead of 4); kept for comparison.
pub fn uniform_cramer_series(ell: usize, order: usize) -> Result<TruncatedSeries> {
    if ell == 0 {
        return Err(Error::DeterminantBoundZero);
    }
    let ell = ell as i64;
    normalised_quotient(determinant_poly(ell - 1), determinant_poly(ell), order)
}

/// One DP pass over the capped automaton. Entry `n` of the result is
/// `A_{n,ell}` for `n = 0..=n_max`.
pub fn bounded_count_dp_row(n_max: usize, ell: usize) -> Vec<BigUint> {
    // top[i]: last step was not an up-step, bottom[i]: it was
    let mut top = vec![BigUint::zero(); ell + 2];
    let mut bottom = vec![BigUint::zero(); ell + 2];
    top[0] = BigUint::one();
    let mut row = Vec::with_capacity(n_max + 1);
    row.push(top[0].clone());
    let mut new_top = vec![BigUint::zero(); ell + 2];
    let mut new_bottom = vec![BigUint::zero(); ell + 2];
    for _ in 0..n_max {
        for i in 0..=ell {
            let mut t = &top[i] + &bottom[i];
            t += &top[i + 1];
            new_top[i] = t;
        }
        new_bottom[0].set_zero();
        for i in 0..ell {
            new_bottom[i + 1] = &top[i] + &bottom[i];
        }
        std::mem::swap(&mut top, &mut new_top);
        std::mem::swap(&mut bottom, &mut new_bottom);
        row.push(&top[0] + &bottom[0]);
    }
    row
}

pub fn bounded_count_dp(n: usize, ell: usize) -> BigUint {
    bounded_count_dp_row(n, ell)
        .pop()
        .expect("row has n + 1 entries")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundedMethod {
    ContinuedFraction,
    Determinant,
    AutomatonDP,
}

/// `A[n][ell]` for `0 <= n <= n_max`, `0 <= ell <= ell_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedCountTable {
    pub n_max: usize,
    pub ell_max: usize,
    pub method: BoundedMethod,
    entries: Vec<Vec<BigUint>>,
}

impl BoundedCountTable {
    /// Builds the table column by column (one column per bound, computed
    /// in parallel). The determinant method takes column 0 from the
    /// continued fraction, where the Cramer quotient is undefined.
    pub fn build(n_max: usize, ell_max: usize, method: BoundedMethod) -> Result<Self> {
        let columns: Vec<Vec<BigUint>> = (0..=ell_max)
            .into_par_iter()
            .map(|ell| column(n_max, ell, method))
            .collect::<Result<_>>()?;
        let entries = (0..=n_max)
            .map(|n| columns.iter().map(|col| col[n].clone()).collect())
            .collect();
        Ok(Self {
            n_max,
            ell_max,
            method,
            entries,
        })
    }

    pub fn get(&self, n: usize, ell: usize) -> Option<&BigUint> {
        self.entries.get(n)?.get(ell)
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.entries[n]
    }

    /// CSV with header `n,ell,count`, rows ordered by `n` then `ell`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| Error::Export(e.to_string());
        w.write_record(["n", "ell", "count"]).map_err(err)?;
        for (n, row) in self.entries.iter().enumerate() {
            for (ell, count) in row.iter().enumerate() {
                w.write_record([n.to_string(), ell.to_string(), count.to_string()])
                    .map_err(err)?;
            }
        }
        w.flush().map_err(|e| Error::Export(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Export(e.to_string()))
    }
}

fn column(n_max: usize, ell: usize, method: BoundedMethod) -> Result<Vec<BigUint>> {
    let series = match method {
        BoundedMethod::AutomatonDP => return Ok(bounded_count_dp_row(n_max, ell)),
        BoundedMethod::ContinuedFraction => bounded_series_cf(ell, n_max)?,
        BoundedMethod::Determinant if ell == 0 => bounded_series_cf(0, n_max)?,
        BoundedMethod::Determinant => bounded_series_det(ell, n_max)?,
    };
    series.coeffs().iter().map(to_count).collect()
}
