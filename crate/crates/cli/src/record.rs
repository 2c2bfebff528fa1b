//! One output row, and its JSON-lines and CSV encodings.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Family {
    S1,
    S2,
    #[serde(rename = "r_s2")]
    #[value(name = "r_s2")]
    RS2,
    S2Deg,
    S2Ext,
    Bell,
    BellDeg,
    BellExt,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::S1,
        Family::S2,
        Family::RS2,
        Family::S2Deg,
        Family::S2Ext,
        Family::Bell,
        Family::BellDeg,
        Family::BellExt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::S1 => "s1",
            Family::S2 => "s2",
            Family::RS2 => "r_s2",
            Family::S2Deg => "s2_deg",
            Family::S2Ext => "s2_ext",
            Family::Bell => "bell",
            Family::BellDeg => "bell_deg",
            Family::BellExt => "bell_ext",
        }
    }

    /// Indexed by `(n, k)` rather than `n` alone.
    pub fn has_k(self) -> bool {
        !self.is_bell()
    }

    pub fn has_r(self) -> bool {
        matches!(self, Family::RS2 | Family::S2Ext | Family::BellExt)
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Family::S2Deg | Family::S2Ext | Family::BellDeg | Family::BellExt)
    }

    pub fn is_bell(self) -> bool {
        matches!(self, Family::Bell | Family::BellDeg | Family::BellExt)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| CliError::Decode(format!("unknown family {s:?}")))
    }
}

/// `value` is a rational string, a λ-polynomial array, or an x-polynomial
/// array (of strings or of λ-polynomial arrays).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputRecord {
    pub family: Family,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    pub value: Value,
}

const CSV_HEADER: [&str; 7] = ["family", "n", "k", "r", "lambda", "x", "value"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn value_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes records as JSON lines or as CSV with a header row.
pub fn write_records<W: Write>(records: &[OutputRecord], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let mut out = out;
            for rec in records {
                serde_json::to_writer(&mut out, rec).map_err(|e| CliError::Io(e.to_string()))?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for rec in records {
                w.write_record([
                    rec.family.to_string(),
                    rec.n.to_string(),
                    cell(&rec.k),
                    cell(&rec.r),
                    cell(&rec.lambda),
                    cell(&rec.x),
                    value_cell(&rec.value),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn parse_json_lines(input: &str) -> Result<Vec<OutputRecord>, CliError> {
    input
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| CliError::Decode(e.to_string())))
        .collect()
}

fn opt_index(s: &str, name: &str) -> Result<Option<usize>, CliError> {
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse()
            .map(Some)
            .map_err(|_| CliError::Decode(format!("bad {name} cell {s:?}")))
    }
}

fn opt_text(s: &str) -> Option<String> {
    (!s.is_empty()).then(|| s.to_string())
}

pub fn parse_csv(input: &str) -> Result<Vec<OutputRecord>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::Decode(format!("expected header {}", CSV_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        if row.len() != CSV_HEADER.len() {
            return Err(CliError::Decode(format!("expected 7 cells, got {}", row.len())));
        }
        let value = if row[6].starts_with('[') {
            serde_json::from_str(&row[6]).map_err(|e| CliError::Decode(e.to_string()))?
        } else {
            Value::String(row[6].to_string())
        };
        out.push(OutputRecord {
            family: row[0].parse()?,
            n: row[1]
                .parse()
                .map_err(|_| CliError::Decode(format!("bad n cell {:?}", &row[1])))?,
            k: opt_index(&row[2], "k")?,
            r: opt_index(&row[3], "r")?,
            lambda: opt_text(&row[4]),
            x: opt_text(&row[5]),
            value,
        });
    }
    Ok(out)
}
