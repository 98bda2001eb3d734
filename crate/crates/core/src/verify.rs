//! Cross-engine verification suite.
//!
//! Every check names the operation it exercises so a failure points at the
//! engine to blame. Engines are injected through [`Engines`], which lets a
//! deliberately broken implementation be swapped in to confirm the suite
//! catches it.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::counting::{
    bounded_count_dp, bounded_series_cf, bounded_series_det, determinant_poly, end_level_series,
    functional_residual, height_distribution, kernel_residual, kernel_root_series,
    level_recursion_residual, motzkin_count, peakless_recurrence, peakless_series,
    peakless_series_raw, pretty_cf_check, reciprocal_root_times_z, CountSequence,
};
use crate::error::Result;
use crate::paths::{
    all_step_sequences, automaton_accepts, brute_force_count_capped, enumerate_paths_capped,
    LatticePath, PathConstraints,
};
use crate::series::{IntPolynomial, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    /// Largest length and bound covered by the agreement sweep.
    pub fn sweep(self) -> (usize, usize) {
        match self {
            VerifyLevel::Quick => (10, 4),
            VerifyLevel::Full => (14, 7),
        }
    }
}

type SeriesEngine = fn(usize) -> Result<CountSequence>;
type BoundedSeriesEngine = fn(usize, usize) -> Result<TruncatedSeries>;

/// The engines under test.
#[derive(Clone, Copy)]
pub struct Engines {
    pub peakless_series: SeriesEngine,
    pub peakless_recurrence: SeriesEngine,
    pub bounded_series_cf: BoundedSeriesEngine,
    pub bounded_series_det: BoundedSeriesEngine,
    pub bounded_count_dp: fn(usize, usize) -> BigUint,
    pub determinant_poly: fn(i64) -> IntPolynomial,
}

impl Default for Engines {
    fn default() -> Self {
        Self {
            peakless_series,
            peakless_recurrence,
            bounded_series_cf,
            bounded_series_det,
            bounded_count_dp,
            determinant_poly,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub operation: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub checks: Vec<CheckOutcome>,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failing_operations(&self) -> Vec<&'static str> {
        let mut ops: Vec<&'static str> = self.failures().map(|c| c.operation).collect();
        ops.dedup();
        ops
    }
}

struct Suite {
    checks: Vec<CheckOutcome>,
}

impl Suite {
    fn check(
        &mut self,
        operation: &'static str,
        name: impl Into<String>,
        run: impl FnOnce() -> Result<std::result::Result<(), String>>,
    ) {
        let (passed, detail) = match run() {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(msg)) => (false, msg),
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(CheckOutcome {
            name: name.into(),
            operation,
            passed,
            detail,
        });
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, want {want:?}"))
    }
}

fn counts(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn coeff_counts(s: &TruncatedSeries) -> Vec<BigInt> {
    s.coeffs().to_vec()
}

/// Runs the suite. `oracle_cap` bounds the brute-force lengths used.
pub fn run_verification(level: VerifyLevel, engines: &Engines, oracle_cap: usize) -> VerifyReport {
    let start = Instant::now();
    let mut s = Suite { checks: Vec::new() };
    let (n_max, ell_max) = level.sweep();
    let n_max = n_max.min(oracle_cap);
    let e = *engines;

    path_checks(&mut s, level, oracle_cap);

    s.check("series_mul", "(1+z+z^2)^2 = 1+2z+3z^2", || {
        let a = TruncatedSeries::new([1, 1, 1], 2);
        Ok(expect_eq(&a * &a, TruncatedSeries::new([1, 2, 3], 2)))
    });
    s.check("series_inverse", "1/(1-z+z^2) = 1+z-z^3-z^4", || {
        let inv = TruncatedSeries::new([1, -1, 1], 4).inverse()?;
        Ok(expect_eq(inv, TruncatedSeries::new([1, 1, 0, -1, -1], 4)))
    });

    s.check(
        "motzkin_count",
        format!("M_n equals brute force for n <= {n_max}"),
        || {
            let m = motzkin_count(n_max);
            for n in 0..=n_max {
                let bf = brute_force_count_capped(n, PathConstraints::motzkin(), oracle_cap)?;
                if m.values[n] != bf {
                    return Ok(Err(format!("n = {n}: {} vs {bf}", m.values[n])));
                }
            }
            Ok(Ok(()))
        },
    );

    let head = counts(&[1, 1, 1, 2, 4, 8, 17]);
    s.check("peakless_series", "m(0..6) = 1,1,1,2,4,8,17", || {
        Ok(expect_eq((e.peakless_series)(6)?.values, head.clone()))
    });
    s.check("peakless_recurrence", "m(0..6) = 1,1,1,2,4,8,17", || {
        Ok(expect_eq((e.peakless_recurrence)(6)?.values, head.clone()))
    });

    s.check("end_level_series", "end level 1 equals brute force", || {
        let h1 = end_level_series(1, n_max)?;
        for n in 0..=n_max {
            let c = PathConstraints::peakless().with_end_level(1);
            let bf = BigInt::from(brute_force_count_capped(n, c, oracle_cap)?);
            if h1.coeffs()[n] != bf {
                return Ok(Err(format!("n = {n}: {} vs {bf}", h1.coeffs()[n])));
            }
        }
        Ok(Ok(()))
    });

    s.check(
        "determinant_poly",
        "D_0 = z-z^2-1, D_1 = (1-z)^2(1+z^2)",
        || {
            let one_minus_z = IntPolynomial::new([1, -1]);
            let d1 = &(&one_minus_z * &one_minus_z) * &IntPolynomial::new([1, 0, 1]);
            Ok(expect_eq(
                ((e.determinant_poly)(0), (e.determinant_poly)(1)),
                (IntPolynomial::new([-1, 1, -1]), d1),
            ))
        },
    );

    agreement_sweep(&mut s, &e, n_max, ell_max, oracle_cap);

    s.check("height_distribution", "n = 4: 0:1 1:3  E[H]=3/4", || {
        Ok(expect_eq(
            height_distribution(4).summary(),
            "0:1 1:3  E[H]=3/4".to_string(),
        ))
    });
    s.check(
        "height_distribution",
        "moment and tail forms agree for n <= 30",
        || {
            for n in 0..=30 {
                let h = height_distribution(n);
                if h.moment_expectation() != h.expected_height {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        },
    );

    s.check(
        "pretty_cf_check",
        "depth 1 agrees through z^1, depth 7 through z^7",
        || {
            Ok(expect_eq(
                (
                    pretty_cf_check(1, 20)?,
                    pretty_cf_check(7, 20)?.is_some_and(|m| m >= 7),
                ),
                (Some(1), true),
            ))
        },
    );

    let order = if level == VerifyLevel::Full { 200 } else { 40 };
    s.check(
        "kernel_root_series",
        format!("kernel residuals vanish to order {order}"),
        || {
            let f = peakless_series_raw(order)?;
            let s2 = kernel_root_series(order)?;
            let z = TruncatedSeries::monomial(BigInt::one(), 1, order);
            Ok(expect_eq(
                (
                    functional_residual(&f).is_zero(),
                    kernel_residual(&s2).is_zero(),
                    &reciprocal_root_times_z(&s2) * &s2 == z,
                    s2.coeffs()[0] == BigInt::from(0),
                ),
                (true, true, true, true),
            ))
        },
    );
    s.check(
        "end_level_series",
        format!("level recursion for 2 <= k <= 6, order {order}"),
        || {
            for k in 2..=6 {
                if !level_recursion_residual(k, order)?.is_zero() {
                    return Ok(Err(format!("k = {k}")));
                }
            }
            Ok(Ok(()))
        },
    );

    if level == VerifyLevel::Full {
        s.check(
            "peakless_recurrence",
            "exact division up to n = 5000",
            || (e.peakless_recurrence)(5000).map(|m| expect_eq(m.len(), 5001)),
        );
        s.check(
            "peakless_recurrence",
            "agrees with functional equation to n = 200",
            || {
                let a = (e.peakless_recurrence)(200)?;
                let b = (e.peakless_series)(200)?;
                Ok(expect_eq(a.values, b.values))
            },
        );
    }

    VerifyReport {
        level,
        checks: s.checks,
        elapsed: start.elapsed(),
    }
}

fn path_checks(s: &mut Suite, level: VerifyLevel, cap: usize) {
    let p = |t: &str| t.parse::<LatticePath>();
    s.check("level_profile", "UUDD -> 0,1,2,1,0", || {
        Ok(expect_eq(p("UUDD")?.level_profile(), vec![0, 1, 2, 1, 0]))
    });
    s.check("height", "FFFF, UUDD, UFDF -> 0, 2, 1", || {
        Ok(expect_eq(
            (
                p("FFFF")?.height()?,
                p("UUDD")?.height()?,
                p("UFDF")?.height()?,
            ),
            (0, 2, 1),
        ))
    });
    s.check("has_peak", "UUDD has a peak, UFDF does not", || {
        Ok(expect_eq(
            (p("UUDD")?.has_peak(), p("UFDF")?.has_peak()),
            (true, false),
        ))
    });
    s.check(
        "automaton_accepts",
        "UFDF accepted, UDFF and DFFF rejected",
        || {
            let a = automaton_accepts(&p("UFDF")?);
            Ok(expect_eq(
                (
                    a.accepted,
                    a.end_level,
                    automaton_accepts(&p("UDFF")?).accepted,
                    automaton_accepts(&p("DFFF")?).accepted,
                ),
                (true, 0, false, false),
            ))
        },
    );
    let exhaustive = match level {
        VerifyLevel::Quick => 8,
        VerifyLevel::Full => 12,
    };
    s.check(
        "automaton_accepts",
        format!("automaton equals predicates for all sequences of length <= {exhaustive}"),
        || {
            for n in 0..=exhaustive {
                for path in all_step_sequences(n) {
                    let want = path.is_valid_prefix() && !path.has_peak();
                    if automaton_accepts(&path).accepted != want {
                        return Ok(Err(format!("disagree on {path}")));
                    }
                }
            }
            Ok(Ok(()))
        },
    );
    s.check("enumerate_paths", "length 4: 9 Motzkin, 4 peakless", || {
        let all = enumerate_paths_capped(4, PathConstraints::motzkin(), cap)?.count();
        let pk: Vec<String> = enumerate_paths_capped(4, PathConstraints::peakless(), cap)?
            .map(|p| p.to_string())
            .collect();
        Ok(expect_eq(
            (all, pk),
            (
                9,
                vec!["FFFF".into(), "FUFD".into(), "UFFD".into(), "UFDF".into()],
            ),
        ))
    });
    s.check(
        "brute_force_count",
        "peakless n=6 -> 17, n=4 ell=1 -> 4",
        || {
            let c = PathConstraints::peakless();
            Ok(expect_eq(
                (
                    brute_force_count_capped(6, c, cap)?,
                    brute_force_count_capped(4, c.with_max_height(1), cap)?,
                ),
                (BigUint::from(17u32), BigUint::from(4u32)),
            ))
        },
    );
}

/// Brute force, DP, continued fraction and determinant for every
/// `n <= n_max`, `ell <= ell_max`; unbounded engines against `ell = n/2`.
fn agreement_sweep(s: &mut Suite, e: &Engines, n_max: usize, ell_max: usize, cap: usize) {
    let sweep = format!("n <= {n_max}, ell <= {ell_max}");
    let mut brute = Vec::new();
    s.check(
        "brute_force_count",
        format!("oracle table, {sweep}"),
        || {
            for n in 0..=n_max {
                let row = (0..=ell_max)
                    .map(|ell| {
                        brute_force_count_capped(
                            n,
                            PathConstraints::peakless().with_max_height(ell),
                            cap,
                        )
                        .map(BigInt::from)
                    })
                    .collect::<Result<Vec<_>>>()?;
                brute.push(row);
            }
            Ok(Ok(()))
        },
    );
    if brute.len() != n_max + 1 {
        return;
    }

    s.check(
        "bounded_count_dp",
        format!("DP equals brute force, {sweep}"),
        || {
            for (n, row) in brute.iter().enumerate() {
                for (ell, want) in row.iter().enumerate() {
                    let got = BigInt::from((e.bounded_count_dp)(n, ell));
                    if &got != want {
                        return Ok(Err(format!("n = {n}, ell = {ell}: {got} vs {want}")));
                    }
                }
            }
            Ok(Ok(()))
        },
    );
    let series_check =
        |s: &mut Suite, op: &'static str, engine: BoundedSeriesEngine, from: usize| {
            s.check(
                op,
                format!("coefficients equal brute force, {sweep}"),
                || {
                    for ell in from..=ell_max {
                        let c = coeff_counts(&engine(ell, n_max)?);
                        for (n, row) in brute.iter().enumerate() {
                            if c[n] != row[ell] {
                                return Ok(Err(format!(
                                    "n = {n}, ell = {ell}: {} vs {}",
                                    c[n], row[ell]
                                )));
                            }
                        }
                    }
                    Ok(Ok(()))
                },
            );
        };
    series_check(s, "bounded_series_cf", e.bounded_series_cf, 0);
    series_check(s, "bounded_series_det", e.bounded_series_det, 1);

    s.check(
        "peakless_series",
        format!("unbounded engines equal ell = n/2 counts, n <= {n_max}"),
        || {
            let a = (e.peakless_series)(n_max)?;
            let b = (e.peakless_recurrence)(n_max)?;
            for n in 0..=n_max {
                let bf = brute_force_count_capped(
                    n,
                    PathConstraints::peakless().with_max_height(n / 2),
                    cap,
                )?;
                let dp = (e.bounded_count_dp)(n, n / 2);
                if a.values[n] != bf || b.values[n] != bf || dp != bf {
                    return Ok(Err(format!(
                        "n = {n}: series {}, recurrence {}, dp {dp}, brute {bf}",
                        a.values[n], b.values[n]
                    )));
                }
            }
            Ok(Ok(()))
        },
    );
}

/// Convenience used by the CLI: the default engines.
pub fn run_default(level: VerifyLevel, oracle_cap: usize) -> VerifyReport {
    run_verification(level, &Engines::default(), oracle_cap)
}
