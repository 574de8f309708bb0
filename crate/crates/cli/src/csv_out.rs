//! CSV emission for corpus runs: RFC 4180 quoting, UTF-8, one row per
//! successful record, fixed header. Floats are written with Rust's shortest
//! round-trip formatting, so output is byte-deterministic and parses back to
//! the exact values.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::corpus::{BenchRow, TrialsMode};

pub const CSV_HEADER: &[&str] = &[
    "name",
    "n",
    "vol_g",
    "lambda1",
    "v_inf",
    "h_classical",
    "h_random",
    "delta_h",
    "h_exact",
    "mode",
];

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("row {row}: {message}")]
    Malformed { row: usize, message: String },
}

/// Writes the header plus one row per successful record, in input order.
pub fn emit_csv<W: Write>(rows: &[BenchRow], writer: W) -> Result<(), CsvError> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(CSV_HEADER)?;
    for row in rows {
        let Some(r) = row.record() else { continue };
        out.write_record([
            r.name.as_str(),
            &r.n.to_string(),
            &r.vol_g.to_string(),
            &r.lambda1.to_string(),
            &r.v_inf.to_string(),
            &r.h_classical.to_string(),
            &r.h_random.to_string(),
            &r.delta_h.to_string(),
            &r.h_exact.map(|h| h.to_string()).unwrap_or_default(),
            &r.mode.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_csv_to_path(rows: &[BenchRow], path: &Path) -> Result<(), CsvError> {
    let file = File::create(path)?;
    emit_csv(rows, file)
}

pub fn to_csv_string(rows: &[BenchRow]) -> Result<String, CsvError> {
    let mut buf = Vec::new();
    emit_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// A parsed CSV row; numeric fields only, runtimes are not serialized.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRecord {
    pub name: String,
    pub n: usize,
    pub vol_g: u64,
    pub lambda1: f64,
    pub v_inf: f64,
    pub h_classical: f64,
    pub h_random: f64,
    pub delta_h: f64,
    pub h_exact: Option<f64>,
    pub mode: TrialsMode,
}

/// Parses CSV produced by [`emit_csv`]; the round trip is exact because the
/// writer uses shortest round-trip float formatting.
pub fn parse_csv(text: &str) -> Result<Vec<CsvRecord>, CsvError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut records = Vec::new();
    for (idx, result) in reader.records().enumerate() {
        let row = result?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let num = |i: usize| -> Result<f64, CsvError> {
            field(i).parse().map_err(|_| CsvError::Malformed {
                row: idx + 1,
                message: format!("bad number `{}` in column {}", field(i), CSV_HEADER[i]),
            })
        };
        let h_exact = if field(8).is_empty() {
            None
        } else {
            Some(num(8)?)
        };
        records.push(CsvRecord {
            name: field(0).to_string(),
            n: field(1).parse().map_err(|_| CsvError::Malformed {
                row: idx + 1,
                message: "bad n".into(),
            })?,
            vol_g: field(2).parse().map_err(|_| CsvError::Malformed {
                row: idx + 1,
                message: "bad vol_g".into(),
            })?,
            lambda1: num(3)?,
            v_inf: num(4)?,
            h_classical: num(5)?,
            h_random: num(6)?,
            delta_h: num(7)?,
            h_exact,
            mode: field(9).parse().map_err(|message| CsvError::Malformed {
                row: idx + 1,
                message,
            })?,
        });
    }
    Ok(records)
}
