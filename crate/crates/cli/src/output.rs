// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::Path;

use crate::config::RunConfig;
use crate::error::CliResult;

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            // 17 significant digits round-trip every finite f64.
            Cell::Num(v) => write!(out, "{v:.16e}").unwrap(),
            Cell::Text(s) => out.push_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Table with `#` metadata lines, a header and constant-width rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvSeries {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvSeries {
    pub fn new(command: &str, config: &RunConfig, header: &[&str]) -> Self {
        Self {
            metadata: standard_metadata(command, config),
            header: header.iter().map(|h| (*h).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}={v}").unwrap();
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.header.len());
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

pub fn standard_metadata(command: &str, config: &RunConfig) -> Vec<(String, String)> {
    vec![
        ("tool".into(), format!("optomech {}", env!("CARGO_PKG_VERSION"))),
        ("command".into(), command.into()),
        ("config_sha256".into(), config.hash.clone()),
        ("mode".into(), config.mode.as_str().into()),
    ]
}

/// Write `text` to `path`, or to stdout when no path is given. The content is
/// fully rendered before the file is created.
pub fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let mut s = String::new();
            Cell::Num(v).render(&mut s);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
