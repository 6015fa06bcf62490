//! Report assembly and byte-stable emission as JSON, CSV or SVG.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::svg::Plot;

/// Shortest decimal that reads back to the same `f64`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        // keeps -0.0 and 0.0 apart while staying short
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    format!("{x:?}")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Comma-separated, header row, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn complex_cells(z: Complex64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

#[derive(Debug, Clone)]
pub struct Report {
    pub json: serde_json::Value,
    pub table: Table,
    pub plot: Option<Plot>,
}

impl Report {
    pub fn new(json: &impl Serialize, table: Table) -> CliResult<Self> {
        let json = serde_json::to_value(json).map_err(|e| CliError::Input(format!("unserializable report: {e}")))?;
        Ok(Report { json, table, plot: None })
    }

    pub fn with_plot(mut self, plot: Plot) -> Self {
        self.plot = Some(plot);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            _ => Err(CliError::Input(format!("unknown format `{s}`"))),
        }
    }

    /// From the file extension; JSON when there is none.
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Format::Csv,
            Some("svg") => Format::Svg,
            _ => Format::Json,
        }
    }
}

pub fn render(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json)
                .map_err(|e| CliError::Input(format!("unserializable report: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => Ok(report.table.to_csv()),
        Format::Svg => report
            .plot
            .as_ref()
            .map(Plot::render)
            .ok_or_else(|| CliError::Input("this command has no plot".into())),
    }
}

/// Write to `path`, or to stdout when there is none.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> CliResult<()> {
    let text = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
