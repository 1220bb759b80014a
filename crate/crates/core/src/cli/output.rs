use std::io::Write;

use serde_json::Value;

use crate::error::{Error, Result};

/// A cell of an output table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Prints `v` with 17 significant digits, and infinities as `inf`/`-inf`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn parse_float(text: &str) -> Result<f64> {
    text.trim()
        .parse()
        .map_err(|_| Error::domain(format!("not a number: `{text}`")))
}

/// CSV table preceded by a `#`-prefixed JSON line describing how it was made.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Value, columns: &[&str]) -> Self {
        Table {
            header,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: impl Write) -> Result<()> {
        let mut out = std::io::BufWriter::new(out);
        writeln!(out, "# {}", self.header)?;
        let mut csv = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        csv.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(|c| match c {
                Cell::Num(v) => format_float(*v),
                Cell::Int(v) => v.to_string(),
                Cell::Text(t) => t.clone(),
            }))
            .map_err(io)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn to_text(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Header, column names and raw rows of a table written by [`Table::write`].
pub fn read_table(text: &str) -> Result<(Value, Vec<String>, Vec<Vec<String>>)> {
    let (first, rest) = text
        .split_once('\n')
        .ok_or_else(|| Error::domain("table is missing its header line"))?;
    let json = first
        .strip_prefix("# ")
        .ok_or_else(|| Error::domain("table header must start with `# `"))?;
    let header: Value =
        serde_json::from_str(json).map_err(|e| Error::domain(format!("bad table header: {e}")))?;
    let mut csv = csv::Reader::from_reader(rest.as_bytes());
    let columns = csv
        .headers()
        .map_err(|e| Error::domain(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    let rows = csv
        .records()
        .map(|r| {
            r.map(|r| r.iter().map(String::from).collect())
                .map_err(|e| Error::domain(e.to_string()))
        })
        .collect::<Result<_>>()?;
    Ok((header, columns, rows))
}
