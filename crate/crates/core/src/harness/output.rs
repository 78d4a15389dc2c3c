//! CSV / JSON writers. Floats go out with 17 significant digits so that a
//! rerun with the same configuration is byte-identical and round-trips.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use super::config::OutputFormat;
use crate::error::Result;

/// A flat row type with a fixed column order.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Missing values become empty fields.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn write_csv<T: CsvRecord, W: Write>(records: &[T], mut w: W) -> io::Result<()> {
    writeln!(w, "{}", T::HEADER.join(","))?;
    for r in records {
        writeln!(w, "{}", r.fields().join(","))?;
    }
    w.flush()
}

pub fn write_json<T: Serialize, W: Write>(value: &T, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_records<T: CsvRecord + Serialize, W: Write>(
    records: &[T],
    format: OutputFormat,
    w: W,
) -> Result<()> {
    match format {
        OutputFormat::Csv => Ok(write_csv(records, w)?),
        OutputFormat::Json => write_json(&records, w),
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit_records<T: CsvRecord + Serialize>(
    records: &[T],
    format: OutputFormat,
    path: Option<&Path>,
) -> Result<()> {
    match path {
        Some(p) => write_records(records, format, io::BufWriter::new(fs::File::create(p)?)),
        None => write_records(records, format, io::stdout().lock()),
    }
}
