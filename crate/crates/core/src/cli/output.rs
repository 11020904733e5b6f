//! Row records and the table/CSV/JSON writers.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::identity::IdentityReport;
use crate::semiprime::{Method, SemiprimeCount};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// One `(n, method)` count; the CSV/JSON schema of `count` and `sweep`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: u64,
    pub method: Method,
    pub count: u64,
    pub terms: u64,
    pub elapsed_ns: u64,
}

impl CountRow {
    pub fn new(c: &SemiprimeCount, timing: bool) -> Self {
        CountRow {
            n: c.n,
            method: c.method,
            count: c.count,
            terms: c.term_count,
            elapsed_ns: if timing {
                u64::try_from(c.elapsed.as_nanos()).unwrap_or(u64::MAX)
            } else {
                0
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub n: u64,
    pub head_sum: u64,
    pub tail_sum: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub residual: i64,
}

impl TryFrom<&IdentityReport> for IdentityRow {
    type Error = String;

    fn try_from(r: &IdentityReport) -> Result<Self, String> {
        let overflow = |_| format!("identity sums at n = {} exceed 64 bits", r.n);
        Ok(IdentityRow {
            n: r.n,
            head_sum: r.head_sum.try_into().map_err(overflow)?,
            tail_sum: r.tail_sum.try_into().map_err(overflow)?,
            lhs: r.lhs.try_into().map_err(overflow)?,
            rhs: r.rhs.try_into().map_err(overflow)?,
            residual: r.residual.try_into().map_err(overflow)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: u64,
    pub method: Method,
    pub count: u64,
    pub terms: u64,
    pub median_ns: u64,
}

/// Column layout for the human-readable table format.
pub trait TableRow {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

impl TableRow for CountRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "method", "count", "terms", "elapsed_ns"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.method.to_string(),
            self.count.to_string(),
            self.terms.to_string(),
            self.elapsed_ns.to_string(),
        ]
    }
}

impl TableRow for IdentityRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "head_sum", "tail_sum", "lhs", "rhs", "residual"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.head_sum.to_string(),
            self.tail_sum.to_string(),
            self.lhs.to_string(),
            self.rhs.to_string(),
            self.residual.to_string(),
        ]
    }
}

impl TableRow for BenchRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "method", "count", "terms", "median_ns"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.method.to_string(),
            self.count.to_string(),
            self.terms.to_string(),
            self.median_ns.to_string(),
        ]
    }
}

const COLUMN_WIDTH: usize = 14;

pub fn table_line(cells: &[impl AsRef<str>]) -> String {
    let mut line = String::new();
    for (i, cell) in cells.iter().enumerate() {
        if i + 1 == cells.len() {
            line.push_str(cell.as_ref());
        } else {
            line.push_str(&format!("{:<width$} ", cell.as_ref(), width = COLUMN_WIDTH));
        }
    }
    line
}

/// Streams rows of one type in the chosen format.
pub struct RowWriter<'a> {
    format: Format,
    out: &'a mut dyn Write,
    rows: usize,
}

impl<'a> RowWriter<'a> {
    pub fn new(format: Format, out: &'a mut dyn Write) -> Self {
        RowWriter {
            format,
            out,
            rows: 0,
        }
    }

    pub fn write<R: Serialize + TableRow>(&mut self, row: &R) -> io::Result<()> {
        let first = self.rows == 0;
        self.rows += 1;
        match self.format {
            Format::Table => {
                if first {
                    writeln!(self.out, "{}", table_line(&R::header()))?;
                }
                writeln!(self.out, "{}", table_line(&row.cells()))
            }
            Format::Csv => {
                // One writer per row so the header is emitted exactly once
                // without holding a borrow of `out` between calls.
                let mut w = csv::WriterBuilder::new()
                    .has_headers(first)
                    .from_writer(&mut *self.out);
                w.serialize(row).map_err(io::Error::other)?;
                w.flush()
            }
            Format::Json => {
                if first {
                    writeln!(self.out, "[")?;
                } else {
                    writeln!(self.out, ",")?;
                }
                serde_json::to_writer(&mut *self.out, row).map_err(io::Error::other)
            }
        }
    }

    /// Close the JSON array. Nothing to do for the other formats.
    pub fn finish(self) -> io::Result<()> {
        if self.format == Format::Json {
            if self.rows == 0 {
                writeln!(self.out, "[")?;
            } else {
                writeln!(self.out)?;
            }
            writeln!(self.out, "]")?;
        }
        Ok(())
    }
}
