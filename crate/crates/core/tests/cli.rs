use std::process::Command;

use semipi::cli::{run, BenchRow, CountRow, IdentityRow, EXIT_DISAGREE, EXIT_OK, EXIT_USAGE};
use semipi::Method;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn semipi(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("semipi").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn csv_rows<T: serde::de::DeserializeOwned>(text: &str) -> Vec<T> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap()
}

#[test]
fn count_golden() {
    let o = semipi(&["count", "25", "--methods", "eq1,eq3_grouped,oracle", "--format", "csv"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.starts_with("n,method,count,terms,elapsed_ns\n"));
    let rows: Vec<CountRow> = csv_rows(&o.stdout);
    assert_eq!(
        rows.iter().map(|r| r.method).collect::<Vec<_>>(),
        vec![Method::Eq1, Method::Eq3Grouped, Method::Oracle]
    );
    assert!(rows.iter().all(|r| r.n == 25 && r.count == 9));
    assert_eq!(rows[0].terms, 3);
}

#[test]
fn count_table_and_defaults() {
    let o = semipi(&["count", "1"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("verdict: agree"), "{}", o.stdout);
    let o = semipi(&["count", "10^6", "--methods", "eq1,eq3_grouped", "--format", "json"]);
    assert_eq!(o.code, EXIT_OK);
    let rows: Vec<CountRow> = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.count == 210_035));
}

#[test]
fn usage_and_range_errors_exit_1() {
    for args in [
        &["count", "abc"][..],
        &["count", "1e6"],
        &["count", "0"],
        &["count", "25", "--methods", "eq2"],
        &["count", "200000000000"],
        &["count", "20000000", "--methods", "oracle"],
        &["identity"],
        &["sweep"],
        &["sweep", "5:1"],
        &["bench", "10^8", "--methods", "eq3_naive"],
        &["--workers", "0", "selftest"],
        &["frobnicate"],
    ] {
        let o = semipi(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?} wrote {}", o.stdout);
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn max_n_override() {
    assert_eq!(semipi(&["count", "100", "--max-n", "50"]).code, EXIT_USAGE);
    let o = semipi(&["--max-n", "2^37", "count", "2^37", "--methods", "eq3_grouped", "--format", "csv"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
}

#[test]
fn identity_single() {
    let o = semipi(&["identity", "25", "--format", "csv"]);
    assert_eq!(o.code, EXIT_OK);
    let rows: Vec<IdentityRow> = csv_rows(&o.stdout);
    assert_eq!(
        rows,
        vec![IdentityRow { n: 25, head_sum: 12, tail_sum: 3, lhs: 9, rhs: 9, residual: 0 }]
    );
    let o = semipi(&["identity", "1", "--format", "json"]);
    let rows: Vec<IdentityRow> = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!((rows[0].lhs, rows[0].rhs, o.code), (0, 0, EXIT_OK));
}

#[test]
fn identity_range_exhaustive() {
    let o = semipi(&["identity", "--range", "1:100000", "--format", "csv", "--workers", "4"]);
    assert_eq!(o.code, EXIT_OK);
    let rows: Vec<IdentityRow> = csv_rows(&o.stdout);
    assert_eq!(rows.len(), 100_000);
    assert!(rows.iter().enumerate().all(|(i, r)| r.n == i as u64 + 1 && r.residual == 0));
}

#[test]
fn sweep_examples() {
    let o = semipi(&["sweep", "1:30:1", "--methods", "oracle", "--format", "csv", "--no-timing"]);
    assert_eq!(o.code, EXIT_OK);
    let rows: Vec<CountRow> = csv_rows(&o.stdout);
    assert_eq!(rows.len(), 30);
    assert_eq!(rows.last().unwrap().count, 10);

    let o = semipi(&["sweep", "25:25:1", "--methods", "eq1", "--format", "csv"]);
    let rows: Vec<CountRow> = csv_rows(&o.stdout);
    assert_eq!((rows.len(), rows[0].count), (1, 9));

    let o = semipi(&["sweep", "10:10:1"]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    let cells: Vec<&str> = lines[1].split_whitespace().collect();
    assert_eq!(cells, vec!["10", "4", "4", "yes"]);
}

#[test]
fn sweep_rejects_caps_before_work() {
    let o = semipi(&["sweep", "1:20000000", "--methods", "eq1,oracle"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stdout.is_empty());
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let args = ["sweep", "--range", "900:1200:7", "--methods", "eq1,eq3_naive,eq3_grouped,oracle", "--no-timing"];
    let csv_out = semipi(&[&args[..], &["--format", "csv"]].concat());
    let json_out = semipi(&[&args[..], &["--format", "json"]].concat());
    let from_csv: Vec<CountRow> = csv_rows(&csv_out.stdout);
    let from_json: Vec<CountRow> = serde_json::from_str(&json_out.stdout).unwrap();
    assert_eq!(from_csv.len(), 43 * 4);
    assert_eq!(from_csv, from_json);

    let csv_out = semipi(&["identity", "--range", "1:500", "--format", "csv"]);
    let json_out = semipi(&["identity", "--range", "1:500", "--format", "json"]);
    let from_csv: Vec<IdentityRow> = csv_rows(&csv_out.stdout);
    let from_json: Vec<IdentityRow> = serde_json::from_str(&json_out.stdout).unwrap();
    assert_eq!(from_csv, from_json);
}

#[test]
fn parallel_output_is_byte_identical() {
    for format in ["table", "csv", "json"] {
        let base = ["sweep", "1:20000:3", "--methods", "eq1,eq3_grouped,oracle", "--no-timing", "--format", format];
        let serial = semipi(&[&base[..], &["--workers", "1"]].concat());
        let parallel = semipi(&[&base[..], &["--workers", "8"]].concat());
        assert_eq!(serial.code, EXIT_OK);
        assert_eq!(serial.stdout, parallel.stdout, "{format}");
    }
    let serial = semipi(&["identity", "--range", "1:9000", "--workers", "1"]);
    let parallel = semipi(&["identity", "--range", "1:9000", "--workers", "6"]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn bench_reports() {
    let o = semipi(&["bench", "25", "--methods", "eq1", "--reps", "3", "--format", "csv"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("# date: ") && o.stdout.contains("# reps: 3"));
    let rows: Vec<BenchRow> = csv_rows(&o.stdout);
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].count, rows[0].method), (9, Method::Eq1));

    let o = semipi(&["bench", "10^6", "--methods", "eq3_naive,eq3_grouped", "--reps", "3", "--format", "json"]);
    assert_eq!(o.code, EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["workers"], 1);
    let rows: Vec<BenchRow> = serde_json::from_value(report["rows"].clone()).unwrap();
    assert_eq!(rows[0].count, rows[1].count);
    assert!(rows[1].median_ns < rows[0].median_ns, "grouped should beat naive: {rows:?}");
}

#[test]
fn bench_grouped_within_ten_times_eq1() {
    let o = semipi(&["bench", "10^6,10^8", "--methods", "eq1,eq3_grouped", "--reps", "3", "--format", "csv"]);
    assert_eq!(o.code, EXIT_OK);
    let rows: Vec<BenchRow> = csv_rows(&o.stdout);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0].count, pair[1].count);
        assert!(pair[1].median_ns <= 10 * pair[0].median_ns.max(1), "{pair:?}");
    }
}

#[test]
fn selftest_passes() {
    let o = semipi(&["selftest"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(!o.stdout.contains("FAIL"));
    assert!(o.stdout.contains("eq3_grouped(25) = 9"));
}

#[test]
fn help_exits_0() {
    let o = semipi(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("identity"));
}

#[test]
fn binary_exit_codes_and_worker_env() {
    let bin = env!("CARGO_BIN_EXE_semipi");
    let out = Command::new(bin)
        .args(["sweep", "1:3000", "--format", "csv", "--no-timing"])
        .env("SEMIPI_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let serial = Command::new(bin)
        .args(["sweep", "1:3000", "--format", "csv", "--no-timing"])
        .env("SEMIPI_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(out.stdout, serial.stdout);

    let bad = Command::new(bin).env("SEMIPI_WORKERS", "zero").args(["count", "25"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));

    let bad = Command::new(bin).args(["count", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
    assert_ne!(EXIT_DISAGREE, EXIT_USAGE);
}
