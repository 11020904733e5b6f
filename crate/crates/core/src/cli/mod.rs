//! Command-line front end.
//!
//! Exit codes: 0 when everything agrees, 1 for usage and range errors, 2 when
//! two methods disagree or an identity residual is nonzero. Machine output
//! goes to `out`, diagnostics to `err`.

mod output;
mod parse;

use std::io::{self, Write};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::identity::identity_report;
use crate::primes::{Limits, QuotientPiTable};
use crate::semiprime::{
    count_semiprimes, count_with_table, first_divergent_term, pair_sum_grouped, pair_sum_naive,
    Method, SemiprimeCount, SemiprimeOracle,
};

pub use output::{BenchRow, CountRow, Format, IdentityRow, RowWriter, TableRow};
pub use parse::{parse_number, parse_positive, RangeSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

/// Values handed to rayon per batch; output is written between batches.
const BATCH: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "semipi", version, about = "Exact semiprime counting and prime-pair identity checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,

    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "SEMIPI_WORKERS", default_value = "1", value_parser = parse::parse_workers)]
    pub workers: usize,

    /// Override the largest accepted n.
    #[arg(long, global = true, value_parser = parse_positive)]
    pub max_n: Option<u64>,

    /// Report elapsed_ns as 0 so output is reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count semiprimes <= N with each method and check agreement.
    Count {
        #[arg(value_parser = parse_positive)]
        n: u64,
        #[arg(long, value_delimiter = ',', default_value = "eq1,eq3_grouped")]
        methods: Vec<Method>,
    },
    /// Check the head/tail prime-pair identity at N or over a range.
    Identity {
        #[arg(value_parser = parse_positive, conflicts_with = "range")]
        n: Option<u64>,
        #[arg(long)]
        range: Option<RangeSpec>,
    },
    /// Count over a range of N, one row per N.
    Sweep {
        #[arg(value_name = "RANGE", conflicts_with = "range")]
        positional: Option<RangeSpec>,
        #[arg(long)]
        range: Option<RangeSpec>,
        #[arg(long, value_delimiter = ',', default_value = "eq1,eq3_grouped")]
        methods: Vec<Method>,
    },
    /// Median wall time per (N, method).
    Bench {
        #[arg(value_delimiter = ',', value_parser = parse_positive, required = true)]
        ns: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "eq1,eq3_grouped")]
        methods: Vec<Method>,
        #[arg(long, default_value = "5", value_parser = parse::parse_workers)]
        reps: usize,
    },
    /// Run the worked N = 25 examples as golden checks.
    Selftest,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub start: u64,
    pub end: u64,
    pub stride: u64,
    pub methods: Vec<Method>,
    pub output_format: Format,
    pub parallelism: usize,
}

impl SweepConfig {
    pub fn validate(&self, limits: &Limits) -> Result<(), String> {
        if self.start == 0 || self.start > self.end {
            return Err(format!("invalid range {}:{}", self.start, self.end));
        }
        if self.stride == 0 {
            return Err("stride must be at least 1".into());
        }
        if self.methods.is_empty() {
            return Err("at least one method is required".into());
        }
        if self.parallelism == 0 {
            return Err("worker count must be at least 1".into());
        }
        for &m in &self.methods {
            m.check(self.end, limits).map_err(|e| e.to_string())?;
        }
        Ok(())
    }

    fn range(&self) -> RangeSpec {
        RangeSpec {
            start: self.start,
            end: self.end,
            stride: self.stride,
        }
    }
}

/// Parse `args` (program name first) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut stderr.lock());
    if out.flush().is_err() {
        return EXIT_USAGE;
    }
    code
}

/// Usage/range errors (exit 1) and I/O failures.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "write failed: {e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let limits = match cli.max_n {
        Some(max_n) => Limits::default().with_max_n(max_n),
        None => Limits::default(),
    };
    let timing = !cli.no_timing;
    match &cli.command {
        Command::Count { n, methods } => cmd_count(*n, methods, cli.format, timing, &limits, out, err),
        Command::Identity { n, range } => {
            let range = match (n, range) {
                (Some(n), None) => RangeSpec {
                    start: *n,
                    end: *n,
                    stride: 1,
                },
                (None, Some(r)) => *r,
                _ => return Err(Failure::Usage("identity needs either N or --range a:b[:s]".into())),
            };
            cmd_identity(range, cli.format, cli.workers, &limits, out, err)
        }
        Command::Sweep {
            positional,
            range,
            methods,
        } => {
            let r = positional
                .or(*range)
                .ok_or_else(|| Failure::Usage("sweep needs a range a:b[:s]".into()))?;
            let config = SweepConfig {
                start: r.start,
                end: r.end,
                stride: r.stride,
                methods: methods.clone(),
                output_format: cli.format,
                parallelism: cli.workers,
            };
            cmd_sweep(&config, timing, &limits, out, err)
        }
        Command::Bench { ns, methods, reps } => {
            cmd_bench(ns, methods, *reps, cli.format, cli.workers, &limits, out, err)
        }
        Command::Selftest => cmd_selftest(cli.format, out),
    }
}

fn dedup(methods: &[Method]) -> Vec<Method> {
    let mut seen = Vec::new();
    for &m in methods {
        if !seen.contains(&m) {
            seen.push(m);
        }
    }
    seen
}

/// True when every count in the slice is the same.
pub fn counts_agree(counts: &[SemiprimeCount]) -> bool {
    counts.windows(2).all(|w| w[0].count == w[1].count)
}

fn report_disagreement(
    n: u64,
    counts: &[SemiprimeCount],
    limits: &Limits,
    err: &mut dyn Write,
) -> io::Result<()> {
    let values: Vec<String> = counts
        .iter()
        .map(|c| format!("{}={}", c.method, c.count))
        .collect();
    write!(err, "disagreement at n = {n}: {}", values.join(" "))?;
    if let Some(k) = QuotientPiTable::with_limits(n, limits)
        .ok()
        .and_then(|q| first_divergent_term(&q))
    {
        write!(err, "; first divergent term at prime index k = {k}")?;
    }
    writeln!(err)
}

fn cmd_count(
    n: u64,
    methods: &[Method],
    format: Format,
    timing: bool,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let methods = dedup(methods);
    for &m in &methods {
        m.check(n, limits)?;
    }
    let counts = methods
        .iter()
        .map(|&m| count_semiprimes(n, m, limits))
        .collect::<Result<Vec<_>, _>>()?;

    let mut w = RowWriter::new(format, out);
    for c in &counts {
        w.write(&CountRow::new(c, timing))?;
    }
    w.finish()?;

    let agree = counts_agree(&counts);
    let verdict = if agree { "agree" } else { "DISAGREE" };
    if format == Format::Table {
        writeln!(out, "verdict: {verdict}")?;
    } else {
        writeln!(err, "verdict: {verdict}")?;
    }
    if agree {
        Ok(EXIT_OK)
    } else {
        report_disagreement(n, &counts, limits, err)?;
        Ok(EXIT_DISAGREE)
    }
}

/// Apply `f` to every value of `range` on `workers` threads, handing results
/// to `sink` in ascending order.
fn for_each_ordered<R, F, S>(
    range: RangeSpec,
    workers: usize,
    f: F,
    mut sink: S,
) -> Result<(), Failure>
where
    R: Send,
    F: Fn(u64) -> Result<R, Error> + Sync,
    S: FnMut(R) -> Result<(), Failure>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {workers} workers: {e}")))?;
    let mut values = range.iter().peekable();
    while values.peek().is_some() {
        let batch: Vec<u64> = values.by_ref().take(BATCH).collect();
        let results: Vec<Result<R, Error>> =
            pool.install(|| batch.par_iter().map(|&n| f(n)).collect());
        for r in results {
            sink(r?)?;
        }
    }
    Ok(())
}

fn cmd_identity(
    range: RangeSpec,
    format: Format,
    workers: usize,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    limits.check_n("identity", range.end)?;
    let mut w = RowWriter::new(format, out);
    let mut failures = 0u64;
    for_each_ordered(
        range,
        workers,
        |n| identity_report(&QuotientPiTable::with_limits(n, limits)?),
        |report| {
            if report.residual != 0 {
                failures += 1;
                writeln!(
                    err,
                    "nonzero residual at n = {}: head={} tail={} lhs={} rhs={} residual={} pi_sqrt={} pi_half={} tail_groups={}",
                    report.n,
                    report.head_sum,
                    report.tail_sum,
                    report.lhs,
                    report.rhs,
                    report.residual,
                    report.pi_sqrt,
                    report.pi_half,
                    report.tail_groups
                )?;
            }
            w.write(&IdentityRow::try_from(&report)?)?;
            Ok(())
        },
    )?;
    w.finish()?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_DISAGREE })
}

fn cmd_sweep(
    config: &SweepConfig,
    timing: bool,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    config.validate(limits)?;
    let methods = dedup(&config.methods);
    let oracle = if methods.contains(&Method::Oracle) {
        Some(SemiprimeOracle::new(config.end)?)
    } else {
        None
    };
    let needs_table = methods.iter().any(|&m| m != Method::Oracle);

    let count_one = |n: u64| -> Result<Vec<SemiprimeCount>, Error> {
        let qpi = if needs_table {
            Some(QuotientPiTable::with_limits(n, limits)?)
        } else {
            None
        };
        methods
            .iter()
            .map(|&m| match (m, &qpi, &oracle) {
                (Method::Oracle, _, Some(o)) => {
                    let start = Instant::now();
                    let count = o.count(n)?;
                    Ok(SemiprimeCount {
                        n,
                        method: m,
                        count,
                        term_count: n,
                        elapsed: start.elapsed(),
                    })
                }
                (_, Some(q), _) => count_with_table(q, m),
                _ => unreachable!("tables are built for every requested method"),
            })
            .collect()
    };

    let mut disagreements = 0u64;
    match config.output_format {
        Format::Table => {
            let mut header = vec!["n".to_string()];
            header.extend(methods.iter().map(|m| m.to_string()));
            header.push("agree".into());
            writeln!(out, "{}", output::table_line(&header))?;
            for_each_ordered(config.range(), config.parallelism, count_one, |counts| {
                let agree = counts_agree(&counts);
                let mut cells = vec![counts[0].n.to_string()];
                cells.extend(counts.iter().map(|c| c.count.to_string()));
                cells.push(if agree { "yes" } else { "NO" }.into());
                writeln!(out, "{}", output::table_line(&cells))?;
                if !agree {
                    disagreements += 1;
                    report_disagreement(counts[0].n, &counts, limits, err)?;
                }
                Ok(())
            })?;
        }
        format => {
            let mut w = RowWriter::new(format, out);
            for_each_ordered(config.range(), config.parallelism, count_one, |counts| {
                for c in &counts {
                    w.write(&CountRow::new(c, timing))?;
                }
                if !counts_agree(&counts) {
                    disagreements += 1;
                    report_disagreement(counts[0].n, &counts, limits, err)?;
                }
                Ok(())
            })?;
            w.finish()?;
        }
    }
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_DISAGREE })
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2
    }
}

#[derive(Serialize)]
struct BenchReport<'a> {
    date: String,
    workers: usize,
    reps: usize,
    rows: &'a [BenchRow],
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    ns: &[u64],
    methods: &[Method],
    reps: usize,
    format: Format,
    workers: usize,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let methods = dedup(methods);
    for &n in ns {
        for &m in &methods {
            m.check(n, limits)?;
        }
    }

    let mut rows = Vec::new();
    let mut disagreements = 0u64;
    for &n in ns {
        let mut counts = Vec::new();
        for &m in &methods {
            let mut samples = Vec::with_capacity(reps);
            let mut last = None;
            for _ in 0..reps {
                let c = count_semiprimes(n, m, limits)?;
                samples.push(c.elapsed);
                last = Some(c);
            }
            let c = last.expect("reps >= 1");
            rows.push(BenchRow {
                n,
                method: m,
                count: c.count,
                terms: c.term_count,
                median_ns: u64::try_from(median(samples).as_nanos()).unwrap_or(u64::MAX),
            });
            counts.push(c);
        }
        if !counts_agree(&counts) {
            disagreements += 1;
            report_disagreement(n, &counts, limits, err)?;
        }
    }

    let date = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    match format {
        Format::Json => {
            let report = BenchReport {
                date,
                workers,
                reps,
                rows: &rows,
            };
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::other)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "# date: {date}")?;
            writeln!(out, "# workers: {workers}")?;
            writeln!(out, "# reps: {reps}")?;
            let mut w = RowWriter::new(format, out);
            for row in &rows {
                w.write(row)?;
            }
            w.finish()?;
        }
    }
    Ok(if disagreements == 0 { EXIT_OK } else { EXIT_DISAGREE })
}

/// A named comparison of an expected and a computed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub expected: i128,
    pub actual: Option<i128>,
}

impl GoldenCheck {
    pub fn passed(&self) -> bool {
        self.actual == Some(self.expected)
    }
}

/// The worked N = 25 examples: pi values at the quotients, both counting
/// formulas, the enumeration, and both sides of the identity.
pub fn golden_checks() -> Vec<GoldenCheck> {
    let limits = Limits::default();
    let qpi = QuotientPiTable::with_limits(25, &limits).ok();
    let pi_over = |d: u64| qpi.as_ref().map(|q| i128::from(q.pi_over(d)));
    let count = |m: Method| {
        count_semiprimes(25, m, &limits)
            .ok()
            .map(|c| i128::from(c.count))
    };
    let report = qpi.as_ref().and_then(|q| identity_report(q).ok());
    let semiprimes = SemiprimeOracle::new(25).ok().map(|o| {
        (1..=25)
            .filter(|&m| o.is_semiprime(m))
            .fold(0i128, |acc, m| acc * 100 + i128::from(m))
    });

    let check = |name, expected, actual| GoldenCheck {
        name,
        expected,
        actual,
    };
    vec![
        check("semiprimes <= 25 are 4,6,9,10,14,15,21,22,25", 40_609_101_415_212_225, semiprimes),
        check("pi(25/2) = 5", 5, pi_over(2)),
        check("pi(25/3) = 4", 4, pi_over(3)),
        check("pi(25/5) = 3", 3, pi_over(5)),
        check("pi(25/7) = 2", 2, pi_over(7)),
        check("pi(25/11) = 1", 1, pi_over(11)),
        check("pi(sqrt 25) = 3", 3, qpi.as_ref().and_then(|q| q.pi(5).ok()).map(i128::from)),
        check(
            "naive pair sum(25) = 15",
            15,
            qpi.as_ref().and_then(|q| pair_sum_naive(q).ok()).map(|s| s.value as i128),
        ),
        check(
            "grouped pair sum(25) = 15",
            15,
            qpi.as_ref().and_then(|q| pair_sum_grouped(q).ok()).map(|s| s.value as i128),
        ),
        check("eq1(25) = 9", 9, count(Method::Eq1)),
        check("eq3_naive(25) = 9", 9, count(Method::Eq3Naive)),
        check("eq3_grouped(25) = 9", 9, count(Method::Eq3Grouped)),
        check("oracle(25) = 9", 9, count(Method::Oracle)),
        check("identity head_sum(25) = 12", 12, report.map(|r| r.head_sum as i128)),
        check("identity tail_sum(25) = 3", 3, report.map(|r| r.tail_sum as i128)),
        check("identity lhs(25) = 9", 9, report.map(|r| r.lhs)),
        check("identity rhs(25) = 9", 9, report.map(|r| r.rhs)),
        check("identity residual(25) = 0", 0, report.map(|r| r.residual)),
    ]
}

fn cmd_selftest(format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let checks = golden_checks();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &checks).map_err(io::Error::other)?;
            writeln!(out)?;
        }
        _ => {
            for c in &checks {
                match c.actual {
                    _ if c.passed() => writeln!(out, "PASS  {}", c.name)?,
                    Some(a) => writeln!(out, "FAIL  {} (got {a})", c.name)?,
                    None => writeln!(out, "FAIL  {} (computation failed)", c.name)?,
                }
            }
        }
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    if format != Format::Json {
        writeln!(out, "{} passed, {failed} failed", checks.len() - failed)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_DISAGREE })
}
