//! CSV ingestion and export for time series.
//!
//! Input files carry a `t,value` or `year,value` header. The delimiter is
//! a comma or a semicolon (detected from the header), and in semicolon
//! files the decimal comma is accepted and normalized. Output always uses
//! the comma delimiter, decimal points and `\n` line endings.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use expseries::{DataPoint, TimeSeries};

/// Reads and validates a series from `path`. The file stem names the
/// series. In a `year` file, abscissas are `year - origin` when an origin
/// is given and the raw year values otherwise.
pub fn read_series(path: &Path, year_origin: Option<f64>) -> Result<TimeSeries> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path
        .file_stem()
        .and_then(|stem| stem.to_str())
        .unwrap_or("series");
    parse_series(&raw, name, year_origin).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_series(raw: &str, name: &str, year_origin: Option<f64>) -> Result<TimeSeries> {
    let text = raw.strip_prefix('\u{feff}').unwrap_or(raw);
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().context("empty file: expected a header row")?;
    let delimiter = if header.contains(';') { ';' } else { ',' };

    let mut columns = header.split(delimiter).map(str::trim);
    let abscissa = columns.next().unwrap_or("");
    let is_year = match abscissa.to_ascii_lowercase().as_str() {
        "t" => false,
        "year" => true,
        other => bail!("line 1: first column is {other:?}, expected \"t\" or \"year\""),
    };
    match columns.next().map(str::to_ascii_lowercase).as_deref() {
        Some("value") => {}
        other => bail!(
            "line 1: second column is {:?}, expected \"value\"",
            other.unwrap_or("missing")
        ),
    }
    if columns.next().is_some() {
        bail!("line 1: expected exactly two columns");
    }

    let mut points = Vec::new();
    for (index, line) in lines {
        let row = index + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(delimiter);
        let raw_t = fields.next().unwrap_or("");
        let raw_y = fields
            .next()
            .with_context(|| format!("line {row}: missing value column"))?;
        if fields.next().is_some() {
            bail!("line {row}: expected exactly two columns");
        }
        let mut t = parse_number(raw_t, row, 1)?;
        let y = parse_number(raw_y, row, 2)?;
        if is_year {
            if let Some(origin) = year_origin {
                t -= origin;
            }
        }
        points.push(DataPoint::new(t, y));
    }
    Ok(TimeSeries::new(name, points)?)
}

fn parse_number(field: &str, row: usize, column: usize) -> Result<f64> {
    // The decimal comma can only survive field splitting in semicolon
    // files, so the replacement never touches a delimiter.
    field
        .trim()
        .replace(',', ".")
        .parse()
        .with_context(|| format!("line {row}, column {column}: invalid number {field:?}"))
}

/// Renders a series in the output format; `f64` formatting is shortest
/// round-trip, so export then ingest is the identity.
pub fn series_to_csv(series: &TimeSeries) -> String {
    let mut out = String::from("t,value\n");
    for point in series.points() {
        out.push_str(&format!("{},{}\n", point.t, point.y));
    }
    out
}
