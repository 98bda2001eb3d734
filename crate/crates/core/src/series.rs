//! Truncated power series and polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every operation takes its truncation order from the operands; there is
//! no global precision. Results of binary operations carry the smaller of
//! the two operand orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients `c_0..=c_N` of a series known modulo `z^(N+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series of the given order from a coefficient list, padding
    /// with zeros or dropping the excess.
    pub fn new<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>, order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * z^k`, truncated.
    pub fn monomial(c: BigInt, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation degree `N` (inclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `z^n`; `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().cloned(), order.min(self.order()))
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); k.min(order + 1)];
        coeffs.extend(
            self.coeffs
                .iter()
                .take((order + 1).saturating_sub(k))
                .cloned(),
        );
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplicative inverse; the constant term must be `+1` or `-1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let order = self.order();
        let mut inv: Vec<BigInt> = Vec::with_capacity(order + 1);
        inv.push(c0.clone());
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &inv[n - k];
                }
            }
            // c0 is its own inverse
            inv.push(-(acc * c0));
        }
        Ok(Self { coeffs: inv })
    }

    /// Largest `M` such that coefficients `0..=M` agree, or `None` when the
    /// constant terms already differ.
    pub fn agreement_order(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
            .map_or(Some(self.order().min(other.order())), |first| {
                first.checked_sub(1)
            })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs)?;
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if first {
            write!(f, "{c}")?;
        } else if c.is_negative() {
            write!(f, " - {}", -c)?;
        } else {
            write!(f, " + {c}")?;
        }
        match k {
            0 => {}
            1 => write!(f, "*z")?,
            _ => write!(f, "*z^{k}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Integer polynomial, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new([1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().cloned(), order)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c))
    }
}

/// A polynomial read as a series of the given order.
pub fn poly_eval_series(p: &IntPolynomial, order: usize) -> TruncatedSeries {
    p.to_series(order)
}

/// Expansion of `num / den` to the given order. `den(0)` must be `±1`.
pub fn poly_divide_series(
    num: &IntPolynomial,
    den: &IntPolynomial,
    order: usize,
) -> Result<TruncatedSeries> {
    let inv = den.to_series(order).inverse()?;
    Ok(&num.to_series(order) * &inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().copied(), order)
    }

    #[test]
    fn small_products() {
        assert_eq!(&s(&[1, 1], 2) * &s(&[1, -1], 2), s(&[1, 0, -1], 2));
        let a = s(&[1, 1, 1], 2);
        assert_eq!(&a * &a, s(&[1, 2, 3], 2));
        let f = s(&[1, 1, 1, 2, 4, 8, 17], 3);
        assert_eq!(&f * &f, s(&[1, 2, 3, 6], 3));
    }

    #[test]
    fn result_order_is_minimum() {
        let a = s(&[1, 2, 3, 4, 5], 4);
        let b = s(&[1, 1], 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&b - &a).order(), 2);
    }

    #[test]
    fn inverses() {
        assert_eq!(s(&[1, -1], 4).inverse().unwrap(), s(&[1, 1, 1, 1, 1], 4));
        assert_eq!(
            s(&[1, -1, 1], 4).inverse().unwrap(),
            s(&[1, 1, 0, -1, -1], 4)
        );
        assert_eq!(s(&[1], 0).inverse().unwrap(), s(&[1], 0));
        assert_eq!(s(&[-1, 1], 3).inverse().unwrap(), s(&[-1, -1, -1, -1], 3));
        assert!(matches!(
            s(&[2, 1], 3).inverse(),
            Err(Error::NonUnitConstant(c)) if c == "2"
        ));
        assert!(s(&[0, 1], 3).inverse().is_err());
    }

    #[test]
    fn polynomial_quotients() {
        let one = IntPolynomial::one();
        let one_minus_z = IntPolynomial::new([1, -1]);
        assert_eq!(
            poly_divide_series(&one, &one_minus_z, 3).unwrap(),
            s(&[1, 1, 1, 1], 3)
        );
        // -D_{-1} / D_0 with D_0 = z - z^2 - 1
        let d0 = IntPolynomial::new([-1, 1, -1]);
        assert_eq!(
            poly_divide_series(&-&one, &d0, 4).unwrap(),
            s(&[1, 1, 0, -1, -1], 4)
        );
        assert_eq!(
            poly_divide_series(&one_minus_z, &one_minus_z, 5).unwrap(),
            TruncatedSeries::one(5)
        );
        assert!(poly_divide_series(&one, &IntPolynomial::new([3, 1]), 2).is_err());
    }

    #[test]
    fn shift_and_agreement() {
        let a = s(&[1, 2, 3, 4], 3);
        assert_eq!(a.shift(1), s(&[0, 1, 2, 3], 3));
        assert_eq!(a.shift(9), TruncatedSeries::zero(3));
        assert_eq!(a.agreement_order(&s(&[1, 2, 0, 4], 3)), Some(1));
        assert_eq!(a.agreement_order(&a), Some(3));
        assert_eq!(a.agreement_order(&s(&[2], 3)), None);
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -2, 0, 3], 3).to_string(), "1 - 2*z + 3*z^3 + O(z^4)");
        assert_eq!(
            IntPolynomial::new([-1, 1, -1]).to_string(),
            "-1 + 1*z - 1*z^2"
        );
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_normalises() {
        let p = IntPolynomial::new([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!((&p - &p).degree(), None);
        let q = &IntPolynomial::new([1, -1]) * &IntPolynomial::new([1, -1]);
        assert_eq!(q, IntPolynomial::new([1, -2, 1]));
    }

    fn small_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-50i64..50, order + 1).prop_map(move |c| s(&c, order))
    }

    fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        (prop::bool::ANY, prop::collection::vec(-20i64..20, order)).prop_map(move |(neg, tail)| {
            let mut c = vec![if neg { -1 } else { 1 }];
            c.extend(tail);
            s(&c, order)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_series(20), b in small_series(20), c in small_series(20)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn inverse_is_two_sided(a in unit_series(20)) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, TruncatedSeries::one(20));
        }

        #[test]
        fn division_contract(
            num in prop::collection::vec(-9i64..9, 0..6),
            tail in prop::collection::vec(-9i64..9, 0..6),
            order in 0usize..25,
        ) {
            let num = IntPolynomial::new(num);
            let mut d = vec![1i64];
            d.extend(tail);
            let den = IntPolynomial::new(d);
            let q = poly_divide_series(&num, &den, order).unwrap();
            prop_assert_eq!(&q * &den.to_series(order), num.to_series(order));
        }
    }
}
