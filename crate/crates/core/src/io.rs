//! CSV and JSON distance-matrix files.
//!
//! CSV: one row per line, comma separated, with an optional header row of
//! labels. JSON: `{"labels": [...], "matrix": [[...], ...]}`; floats are
//! written in their shortest round-trip form.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown matrix format {other:?}"
            ))),
        }
    }
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Self> {
        path.extension()?.to_str()?.parse().ok()
    }

    /// Guesses from content: a leading `{` means JSON.
    pub fn sniff(bytes: &[u8]) -> Self {
        match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
            Some(b'{') => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    #[serde(default)]
    labels: Option<Vec<String>>,
    matrix: Vec<Vec<f64>>,
}

pub fn load_distance_matrix<R: Read>(mut source: R, format: Format) -> Result<DistanceMatrix> {
    let mut buf = Vec::new();
    source.read_to_end(&mut buf)?;
    parse_bytes(&buf, format)
}

pub fn load_path(path: &Path) -> Result<DistanceMatrix> {
    let bytes = fs::read(path)?;
    let format = Format::from_path(path).unwrap_or_else(|| Format::sniff(&bytes));
    parse_bytes(&bytes, format)
}

pub fn parse_bytes(bytes: &[u8], format: Format) -> Result<DistanceMatrix> {
    match format {
        Format::Json => {
            let m: JsonMatrix =
                serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
            DistanceMatrix::from_rows(m.matrix, m.labels)
        }
        Format::Csv => parse_csv(bytes),
    }
}

fn parse_csv(bytes: &[u8]) -> Result<DistanceMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(bytes);

    let mut labels = None;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(f64::from_str).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if line == 0 => labels = Some(record.iter().map(String::from).collect()),
            Err(e) => return Err(Error::Parse(format!("line {}: {e}", line + 1))),
        }
    }
    DistanceMatrix::from_rows(rows, labels)
}

pub fn write_json<W: Write>(d: &DistanceMatrix, mut out: W) -> Result<()> {
    let m = JsonMatrix {
        labels: Some(d.labels().to_vec()),
        matrix: d.rows(),
    };
    serde_json::to_writer(&mut out, &m)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn to_json_string(d: &DistanceMatrix) -> String {
    let mut buf = Vec::new();
    write_json(d, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Writes CSV with a label header row. Floats use Rust's shortest round-trip `Display`.
pub fn write_csv<W: Write>(d: &DistanceMatrix, mut out: W) -> Result<()> {
    writeln!(out, "{}", d.labels().join(","))?;
    for row in d.rows() {
        let line: Vec<String> = row.iter().map(f64::to_string).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_matrix<W: Write>(d: &DistanceMatrix, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(d, out),
        Format::Json => write_json(d, out),
    }
}
