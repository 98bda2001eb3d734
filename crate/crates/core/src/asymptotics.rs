//! Leading-order asymptotics and convergence reports against the exact
//! engines.
//!
//! Counts grow like `rho^-n`, so anything that can exceed `f64` range is
//! handled through natural logarithms and rendered as mantissa/exponent.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::io;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::counting::{height_distribution, peakless_recurrence};
use crate::error::{Error, Result};

/// Dominant singularity and the constants derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityData {
    /// `(3 - sqrt 5) / 2`
    pub rho: f64,
    /// `(3 + sqrt 5) / 2`, the square of the golden ratio
    pub inv_rho: f64,
    /// `5^(1/4)`
    pub amp: f64,
    /// `2 * 5^(-1/4)`
    pub height_const: f64,
}

impl SingularityData {
    pub fn new() -> Self {
        let sqrt5 = 5f64.sqrt();
        Self {
            rho: (3.0 - sqrt5) / 2.0,
            inv_rho: (3.0 + sqrt5) / 2.0,
            amp: 5f64.powf(0.25),
            height_const: 2.0 * 5f64.powf(-0.25),
        }
    }
}

impl Default for SingularityData {
    fn default() -> Self {
        Self::new()
    }
}

/// Constant of the Motzkin-path height reference, `3^(-1/2)`.
pub fn motzkin_height_const() -> f64 {
    3f64.powf(-0.5)
}

/// `ln(5^(1/4) rho^(-n-1) / (2 sqrt(pi) n^(3/2)))`.
pub fn ln_predicted_count(n: usize) -> f64 {
    assert!(n >= 1, "asymptotic count needs n >= 1");
    let s = SingularityData::new();
    let n = n as f64;
    s.amp.ln() - (n + 1.0) * s.rho.ln() - LN_2 - 0.5 * PI.ln() - 1.5 * n.ln()
}

/// Leading-order estimate of `m(n)`; overflows to infinity past n ~ 730,
/// use [`ln_predicted_count`] there.
pub fn predicted_count(n: usize) -> f64 {
    ln_predicted_count(n).exp()
}

/// `2 * 5^(-1/4) * sqrt(pi n)`
pub fn predicted_avg_height(n: usize) -> f64 {
    assert!(n >= 1, "asymptotic height needs n >= 1");
    SingularityData::new().height_const * (PI * n as f64).sqrt()
}

/// Average height of all Motzkin paths, `sqrt(pi n / 3)`.
pub fn motzkin_height_reference(n: usize) -> f64 {
    assert!(n >= 1, "asymptotic height needs n >= 1");
    (PI * n as f64 / 3.0).sqrt()
}

/// Natural log of a positive big integer from its leading 64 bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * LN_2
}

/// A positive real stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue(pub f64);

impl LogValue {
    pub fn from_f64(v: f64) -> Self {
        Self(v.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    /// `(mantissa, exponent)` with `1 <= mantissa < 10`.
    pub fn decimal(self) -> (f64, i64) {
        let log10 = self.0 / std::f64::consts::LN_10;
        let exp = log10.floor();
        (10f64.powf(log10 - exp), exp as i64)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mut m, mut e) = self.decimal();
        m = (m * 1e10).round() / 1e10;
        if m >= 10.0 {
            m /= 10.0;
            e += 1;
        }
        if (-4..15).contains(&e) {
            write!(f, "{:.10}", self.0.exp())
        } else {
            write!(f, "{m:.10}e{e}")
        }
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Count,
    AvgHeight,
}

impl ReportKind {
    /// Default relative tolerance attached to reports of this kind.
    pub fn default_tolerance(self) -> f64 {
        match self {
            ReportKind::Count => 1e-2,
            ReportKind::AvgHeight => 0.15,
        }
    }
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportKind::Count => "count",
            ReportKind::AvgHeight => "avg_height",
        })
    }
}

/// Largest `n` each exact engine is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportLimits {
    pub count_max: usize,
    /// The exact expected height costs O(n^3) big-integer additions.
    pub avg_height_max: usize,
}

impl Default for ReportLimits {
    fn default() -> Self {
        Self {
            count_max: 10_000,
            avg_height_max: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub exact: LogValue,
    pub predicted: LogValue,
    pub ratio: f64,
    /// `sqrt(pi n / 3)` for height reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motzkin_reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub kind: ReportKind,
    pub tolerance: f64,
    pub rows: Vec<ReportRow>,
}

impl ConvergenceReport {
    /// CSV with header `n,exact,predicted,ratio`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| Error::Export(e.to_string());
        w.write_record(["n", "exact", "predicted", "ratio"])
            .map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.exact.to_string(),
                r.predicted.to_string(),
                format!("{:.12}", r.ratio),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| Error::Export(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Export(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serialises")
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.ratio).collect()
    }
}

pub fn convergence_report(kind: ReportKind, n_values: &[usize]) -> Result<ConvergenceReport> {
    convergence_report_with(kind, n_values, ReportLimits::default())
}

/// Exact-versus-predicted table. Rows keep the order of `n_values`.
pub fn convergence_report_with(
    kind: ReportKind,
    n_values: &[usize],
    limits: ReportLimits,
) -> Result<ConvergenceReport> {
    let (what, limit) = match kind {
        ReportKind::Count => ("exact count", limits.count_max),
        ReportKind::AvgHeight => ("exact average height", limits.avg_height_max),
    };
    if n_values.contains(&0) {
        return Err(Error::InvalidArgument(
            "asymptotic estimates need n >= 1".into(),
        ));
    }
    if let Some(&n) = n_values.iter().find(|&&n| n > limit) {
        return Err(Error::ResourceLimit { what, n, limit });
    }

    let rows = match kind {
        ReportKind::Count => {
            let n_max = n_values.iter().copied().max().unwrap_or(0);
            let m = if n_values.is_empty() {
                Vec::new()
            } else {
                peakless_recurrence(n_max)?.values
            };
            n_values
                .iter()
                .map(|&n| {
                    let exact = ln_biguint(&m[n]);
                    let predicted = ln_predicted_count(n);
                    ReportRow {
                        n,
                        exact: LogValue(exact),
                        predicted: LogValue(predicted),
                        ratio: (exact - predicted).exp(),
                        motzkin_reference: None,
                    }
                })
                .collect()
        }
        ReportKind::AvgHeight => n_values
            .par_iter()
            .map(|&n| {
                let exact = height_distribution(n).expected_height_float();
                let predicted = predicted_avg_height(n);
                ReportRow {
                    n,
                    exact: LogValue::from_f64(exact),
                    predicted: LogValue::from_f64(predicted),
                    ratio: exact / predicted,
                    motzkin_reference: Some(motzkin_height_reference(n)),
                }
            })
            .collect(),
    };
    Ok(ConvergenceReport {
        kind,
        tolerance: kind.default_tolerance(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Roots of `a z^2 + b z + c` with negative discriminant, as `(re, im)`.
    fn complex_roots(a: f64, b: f64, c: f64) -> [(f64, f64); 2] {
        let disc = b * b - 4.0 * a * c;
        assert!(disc < 0.0);
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a);
        [(re, im), (re, -im)]
    }

    #[test]
    fn constants() {
        let s = SingularityData::new();
        assert!((s.rho * s.inv_rho - 1.0).abs() < 1e-12);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s.inv_rho - phi * phi).abs() < 1e-12);
        assert!((s.height_const - 1.337480610).abs() < 5e-10);
        assert!((motzkin_height_const() - 0.577_350_269_189_625_8).abs() < 1e-15);
    }

    #[test]
    fn singularity_is_a_root() {
        let r = SingularityData::new().rho;
        assert!((1.0 - 3.0 * r + r * r).abs() < 1e-12);
        for (re, im) in complex_roots(1.0, 1.0, 1.0) {
            assert!(((re * re + im * im).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_root_equals_one_at_singularity() {
        let r = SingularityData::new().rho;
        let w2 = (1.0 + r + r * r) * (1.0 - 3.0 * r + r * r);
        assert!(w2.abs() < 1e-12);
        // the radical vanishes at the singularity
        let s2 = (1.0 - r + r * r) / (2.0 * r);
        assert!((s2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn height_helpers() {
        let c = SingularityData::new().height_const;
        assert!((predicted_avg_height(400) - c * (400.0 * PI).sqrt()).abs() < 1e-12);
        assert!((motzkin_height_reference(300) - (100.0 * PI).sqrt()).abs() < 1e-12);
        let want = 2.0 * 3f64.sqrt() / 5f64.powf(0.25);
        for n in [1, 10, 1000] {
            let r = predicted_avg_height(n) / motzkin_height_reference(n);
            assert!((r - want).abs() < 1e-12);
        }
    }

    #[test]
    fn predicted_count_increases() {
        for n in 2..700 {
            assert!(predicted_count(n + 1) > predicted_count(n));
        }
    }

    #[test]
    fn ln_of_big_integers() {
        let x = BigUint::from(12345u32);
        assert!((ln_biguint(&x) - 12345f64.ln()).abs() < 1e-12);
        let big = BigUint::from(3u32).pow(1000);
        assert!((ln_biguint(&big) - 1000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn log_value_rendering() {
        assert_eq!(LogValue::from_f64(47.5).to_string(), "47.5000000000");
        assert_eq!(
            LogValue(1000.0 * 10f64.ln()).to_string(),
            "1.0000000000e1000"
        );
    }

    #[test]
    fn reports() {
        let r = convergence_report(ReportKind::Count, &[]).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.to_csv_string().unwrap(), "n,exact,predicted,ratio\n");

        let r = convergence_report(ReportKind::Count, &[100, 500, 2000]).unwrap();
        let ratios = r.ratios();
        assert!(ratios.iter().all(|q| (0.9..=1.1).contains(q)), "{ratios:?}");
        let dev: Vec<f64> = ratios.iter().map(|q| (q - 1.0).abs()).collect();
        assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");

        let err = convergence_report(ReportKind::AvgHeight, &[501]).unwrap_err();
        assert!(matches!(
            err,
            Error::ResourceLimit {
                n: 501,
                limit: 500,
                ..
            }
        ));
        assert!(convergence_report(ReportKind::Count, &[10_001]).is_err());
    }

    #[test]
    fn report_json_has_metadata() {
        let r = convergence_report(ReportKind::AvgHeight, &[10]).unwrap();
        let v = r.to_json();
        assert_eq!(v["kind"], "avg_height");
        assert_eq!(v["tolerance"], 0.15);
        assert_eq!(v["rows"][0]["n"], 10);
        assert!(v["rows"][0]["motzkin_reference"].is_number());
    }
}
