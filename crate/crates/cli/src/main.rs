//! `peakless`: command-line front end for the enumeration engines.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use peakless_core::asymptotics::{convergence_report, ReportKind};
use peakless_core::counting::{
    bounded_series_cf, bounded_series_det, height_distribution, peakless_recurrence,
    peakless_series, BoundedCountTable, BoundedMethod,
};
use peakless_core::fixtures::{regenerate_fixture, render_fixture, FIXTURE_MAX_N};
use peakless_core::paths::{enumerate_paths_capped, PathConstraints, DEFAULT_ORACLE_CAP};
use peakless_core::verify::{run_default, VerifyLevel};
use peakless_core::Error;

/// Largest prefix on which `count` cross-checks the two unbounded engines.
const COUNT_CROSS_CHECK: usize = 200;

#[derive(Parser)]
#[command(
    name = "peakless",
    version,
    about = "Exact enumeration of peakless Motzkin paths"
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,

    /// Longest path the brute-force oracle may enumerate.
    #[arg(long, env = "PEAKLESS_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP, global = true)]
    oracle_cap: usize,

    /// Worker threads for table and report rows (output order is fixed).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Peakless Motzkin numbers m(0..=n).
    Count {
        #[arg(short = 'n', long = "order")]
        n: usize,
    },
    /// Height-bounded counts A(0..=n, ell).
    Bounded {
        #[arg(short = 'n', long = "order")]
        n: usize,
        #[arg(short = 'l', long = "bound")]
        ell: usize,
        /// Print every bound 0..=ell instead of only ell.
        #[arg(long)]
        table: bool,
    },
    /// Height distribution and exact expected height at length n.
    Dist {
        #[arg(short = 'n', long = "order")]
        n: usize,
    },
    /// List paths of length n in U/D/F notation.
    Enumerate {
        #[arg(short = 'n', long = "order")]
        n: usize,
        #[arg(long)]
        peakless: bool,
        #[arg(short = 'l', long = "bound")]
        max_height: Option<usize>,
        #[arg(long, default_value_t = 0)]
        end_level: usize,
    },
    /// Run the cross-engine agreement suite.
    Verify {
        #[arg(value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
    /// Exact values against leading-order asymptotics.
    Asympt {
        #[arg(long, value_enum, default_value_t = Kind::Count)]
        kind: Kind,
        /// Lengths to report (comma separated or repeated).
        #[arg(short = 'n', long = "order", value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Write a machine-readable artefact.
    Export {
        #[command(subcommand)]
        what: ExportWhat,
    },
}

#[derive(Subcommand)]
enum ExportWhat {
    /// Bounded count table as CSV `n,ell,count`.
    Table {
        #[arg(short = 'n', long = "order")]
        n: usize,
        #[arg(short = 'l', long = "bound")]
        ell: usize,
    },
    /// The A004148 text fixture, tail regenerated by brute force.
    Fixture {
        #[arg(short = 'n', long = "order", default_value_t = FIXTURE_MAX_N)]
        n: usize,
    },
    /// Convergence report as CSV `n,exact,predicted,ratio` (or JSON).
    Report {
        #[arg(long, value_enum, default_value_t = Kind::Count)]
        kind: Kind,
        #[arg(short = 'n', long = "order", value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Count,
    #[value(name = "avg_height", alias = "avg-height")]
    AvgHeight,
}

impl From<Kind> for ReportKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Count => ReportKind::Count,
            Kind::AvgHeight => ReportKind::AvgHeight,
        }
    }
}

enum Failure {
    Verification(String),
    Engine(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Engine(Error::OracleLimit { .. } | Error::ResourceLimit { .. }) => 3,
            Failure::Engine(Error::InvalidArgument(_) | Error::DeterminantBoundZero) => 2,
            Failure::Engine(_) => 1,
            Failure::Io(_) => 1,
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.common.jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let result = run(&cli).and_then(|(text, failed)| {
        emit(&cli.common, &text)?;
        match failed {
            Some(msg) => Err(Failure::Verification(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification(msg) => eprintln!("verification failed: {msg}"),
                Failure::Engine(e) => eprintln!("error: {e}"),
                Failure::Io(e) => eprintln!("io error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn emit(common: &Common, text: &str) -> io::Result<()> {
    match &common.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Output text plus an optional verification failure that must still exit
/// non-zero after the output is written.
fn run(cli: &Cli) -> Result<(String, Option<String>), Failure> {
    let fmt = cli.common.format;
    let cap = cli.common.oracle_cap;
    match &cli.command {
        Command::Count { n } => cmd_count(*n, fmt),
        Command::Bounded { n, ell, table } => cmd_bounded(*n, *ell, *table, fmt),
        Command::Dist { n } => Ok((cmd_dist(*n, fmt), None)),
        Command::Enumerate {
            n,
            peakless,
            max_height,
            end_level,
        } => {
            let c = PathConstraints {
                peakless: *peakless,
                max_height: *max_height,
                end_level: *end_level,
            };
            cmd_enumerate(*n, c, cap, fmt).map(|t| (t, None))
        }
        Command::Verify { level } => Ok(cmd_verify(*level, cap, fmt)),
        Command::Asympt { kind, n } => cmd_asympt((*kind).into(), n, fmt).map(|t| (t, None)),
        Command::Export { what } => cmd_export(what, fmt).map(|t| (t, None)),
    }
}

fn join(values: &[BigUint]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn cmd_count(n: usize, fmt: Format) -> Result<(String, Option<String>), Failure> {
    let rec = peakless_recurrence(n)?;
    let check = n.min(COUNT_CROSS_CHECK);
    let fe = peakless_series(check)?;
    let mismatch: Vec<String> = (0..=check)
        .filter(|&k| rec.values[k] != fe.values[k])
        .map(|k| {
            format!(
                "n={k}: recurrence {} vs functional equation {}",
                rec.values[k], fe.values[k]
            )
        })
        .collect();
    let text = match fmt {
        Format::Text => format!("{}\n", join(&rec.values)),
        Format::Csv => {
            let mut s = String::from("n,count\n");
            for (k, v) in rec.values.iter().enumerate() {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        }
        Format::Json => format!(
            "{}\n",
            json!({ "method": rec.method, "cross_checked_to": check, "values": strings(&rec.values) })
        ),
    };
    let failed = (!mismatch.is_empty()).then(|| mismatch.join("\n"));
    Ok((text, failed))
}

fn cmd_bounded(
    n: usize,
    ell: usize,
    table: bool,
    fmt: Format,
) -> Result<(String, Option<String>), Failure> {
    let bounds: Vec<usize> = if table {
        (0..=ell).collect()
    } else {
        vec![ell]
    };
    let mut rows = Vec::new();
    let mut mismatch = Vec::new();
    for &l in &bounds {
        let cf = bounded_series_cf(l, n)?;
        if l >= 1 {
            let det = bounded_series_det(l, n)?;
            if det != cf {
                mismatch.push(format!(
                    "ell={l}: bounded_series_det disagrees with bounded_series_cf"
                ));
            }
        }
        let counts: Vec<BigUint> = cf
            .coeffs()
            .iter()
            .map(|c| {
                c.to_biguint()
                    .ok_or_else(|| Error::NegativeCount(c.to_string()))
            })
            .collect::<Result<_, _>>()?;
        rows.push((l, counts));
    }
    let text = match fmt {
        Format::Text if !table => format!("{}\n", join(&rows[0].1)),
        Format::Text => rows
            .iter()
            .map(|(l, c)| format!("ell={l}: {}\n", join(c)))
            .collect(),
        Format::Csv => {
            let mut s = String::from("n,ell,count\n");
            for k in 0..=n {
                for (l, c) in &rows {
                    s.push_str(&format!("{k},{l},{}\n", c[k]));
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(l, c)| json!({ "ell": l, "counts": strings(c) }))
                .collect();
            format!("{}\n", json!({ "n": n, "rows": rows }))
        }
    };
    let failed = (!mismatch.is_empty()).then(|| mismatch.join("\n"));
    Ok((text, failed))
}

fn cmd_dist(n: usize, fmt: Format) -> String {
    let h = height_distribution(n);
    match fmt {
        Format::Text => format!("{}\n", h.summary()),
        Format::Csv => {
            let mut s = String::from("height,count\n");
            for (k, c) in h.distribution.iter().enumerate() {
                s.push_str(&format!("{k},{c}\n"));
            }
            s
        }
        Format::Json => format!("{}\n", h.to_json()),
    }
}

fn cmd_enumerate(n: usize, c: PathConstraints, cap: usize, fmt: Format) -> Outcome {
    let paths: Vec<String> = enumerate_paths_capped(n, c, cap)?
        .map(|p| p.to_string())
        .collect();
    Ok(match fmt {
        Format::Text => paths.iter().map(|p| format!("{p}\n")).collect(),
        Format::Csv => {
            let mut s = String::from("path\n");
            for p in &paths {
                s.push_str(p);
                s.push('\n');
            }
            s
        }
        Format::Json => format!(
            "{}\n",
            json!({ "n": n, "count": paths.len(), "paths": paths })
        ),
    })
}

fn cmd_verify(level: Level, cap: usize, fmt: Format) -> (String, Option<String>) {
    let level = match level {
        Level::Quick => VerifyLevel::Quick,
        Level::Full => VerifyLevel::Full,
    };
    let report = run_default(level, cap);
    let text = match fmt {
        Format::Json => format!(
            "{}\n",
            serde_json::to_value(&report).expect("plain data serialises")
        ),
        Format::Csv => {
            let mut s = String::from("operation,check,passed\n");
            for c in &report.checks {
                s.push_str(&format!("{},\"{}\",{}\n", c.operation, c.name, c.passed));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag}  {}: {}", c.operation, c.name));
                if !c.detail.is_empty() {
                    s.push_str(&format!("  ({})", c.detail));
                }
                s.push('\n');
            }
            s.push_str(&format!(
                "{} checks, {} failed, {:.2}s\n",
                report.checks.len(),
                report.failures().count(),
                report.elapsed.as_secs_f64()
            ));
            s
        }
    };
    let failed = (!report.passed()).then(|| report.failing_operations().join(", "));
    (text, failed)
}

fn cmd_asympt(kind: ReportKind, ns: &[usize], fmt: Format) -> Outcome {
    let r = convergence_report(kind, ns)?;
    Ok(match fmt {
        Format::Csv => r.to_csv_string()?,
        Format::Json => format!("{}\n", r.to_json()),
        Format::Text => {
            let mut s = format!(
                "{:>6}  {:>22}  {:>22}  {:>14}\n",
                "n", "exact", "predicted", "ratio"
            );
            for row in &r.rows {
                s.push_str(&format!(
                    "{:>6}  {:>22}  {:>22}  {:>14.10}\n",
                    row.n,
                    row.exact.to_string(),
                    row.predicted.to_string(),
                    row.ratio
                ));
            }
            s
        }
    })
}

fn cmd_export(what: &ExportWhat, fmt: Format) -> Outcome {
    match what {
        ExportWhat::Table { n, ell } => {
            let t = BoundedCountTable::build(*n, *ell, BoundedMethod::ContinuedFraction)?;
            Ok(t.to_csv_string()?)
        }
        ExportWhat::Fixture { n } => Ok(render_fixture(&regenerate_fixture(*n)?)),
        ExportWhat::Report { kind, n } => {
            let r = convergence_report((*kind).into(), n)?;
            Ok(match fmt {
                Format::Json => format!("{}\n", r.to_json()),
                _ => r.to_csv_string()?,
            })
        }
    }
}
