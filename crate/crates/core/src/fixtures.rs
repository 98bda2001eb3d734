//! The A004148 text fixture: `n value source` per line, `#` comments.
//!
//! Terms 0..=6 are the published expansion; the rest are regenerated by the
//! brute-force enumerator and must keep matching it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::paths::{brute_force_count_capped, PathConstraints};

pub const A004148_FIXTURE: &str = include_str!("../fixtures/a004148.txt");

/// Highest index covered by the fixture.
pub const FIXTURE_MAX_N: usize = 17;

/// Indices up to this one come from the published expansion.
pub const PUBLISHED_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureSource {
    Published,
    BruteForce,
}

impl fmt::Display for FixtureSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureSource::Published => "PAPER",
            FixtureSource::BruteForce => "DERIVED-bruteforce",
        })
    }
}

impl FromStr for FixtureSource {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "PAPER" => Ok(FixtureSource::Published),
            "DERIVED-bruteforce" => Ok(FixtureSource::BruteForce),
            other => Err(format!("unknown source tag {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureEntry {
    pub n: usize,
    pub value: BigUint,
    pub source: FixtureSource,
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Fixture { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [n, value, source] = fields[..] else {
            return Err(bad(format!("expected 3 fields, found {}", fields.len())));
        };
        let n: usize = n.parse().map_err(|e| bad(format!("index: {e}")))?;
        if n != out.len() {
            return Err(bad(format!("expected index {}, found {n}", out.len())));
        }
        out.push(FixtureEntry {
            n,
            value: value.parse().map_err(|e| bad(format!("value: {e}")))?,
            source: source.parse().map_err(bad)?,
        });
    }
    Ok(out)
}

pub fn render_fixture(entries: &[FixtureEntry]) -> String {
    let mut s = String::from("# A004148: peakless Motzkin paths of length n\n# n value source\n");
    for e in entries {
        s.push_str(&format!("{} {} {}\n", e.n, e.value, e.source));
    }
    s
}

/// Rebuilds the fixture: published head plus brute-force tail up to
/// `n_max`. The oracle cap is raised to `n_max`.
pub fn regenerate_fixture(n_max: usize) -> Result<Vec<FixtureEntry>> {
    const HEAD: [u32; PUBLISHED_MAX_N + 1] = [1, 1, 1, 2, 4, 8, 17];
    (0..=n_max)
        .map(|n| {
            Ok(if n <= PUBLISHED_MAX_N {
                FixtureEntry {
                    n,
                    value: BigUint::from(HEAD[n]),
                    source: FixtureSource::Published,
                }
            } else {
                FixtureEntry {
                    n,
                    value: brute_force_count_capped(n, PathConstraints::peakless(), n_max)?,
                    source: FixtureSource::BruteForce,
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixture_parses() {
        let entries = parse_fixture(A004148_FIXTURE).unwrap();
        assert_eq!(entries.len(), FIXTURE_MAX_N + 1);
        for e in &entries {
            let want = if e.n <= PUBLISHED_MAX_N {
                FixtureSource::Published
            } else {
                FixtureSource::BruteForce
            };
            assert_eq!(e.source, want);
        }
        assert_eq!(render_fixture(&entries), A004148_FIXTURE);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_fixture("0 1 PAPER\n2 1 PAPER\n").unwrap_err();
        assert!(matches!(err, Error::Fixture { line: 2, .. }));
        let err = parse_fixture("# c\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Fixture { line: 2, .. }));
        assert!(parse_fixture("0 1 GUESS\n").is_err());
    }
}
