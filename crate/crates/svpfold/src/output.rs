//! CSV tables and JSON metadata.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliResult;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Shortest rendering with at most 12 significant digits: plain decimal
/// for moderate exponents, scientific otherwise.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Integer vectors as `1;-2;0`.
pub fn fmt_vector(x: &[i64]) -> String {
    x.iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&'static str]) -> Self {
        CsvTable {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row does not match the table schema"
        );
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

#[derive(Debug, Serialize)]
pub struct Metadata<C: Serialize, S: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: C,
    pub summary: S,
}

impl<C: Serialize, S: Serialize> Metadata<C, S> {
    pub fn new(command: &'static str, config: C, summary: S) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            summary,
        }
    }
}

/// A finished run: the data table and its metadata document.
pub struct RunOutput {
    pub table: CsvTable,
    pub metadata: serde_json::Value,
}

impl RunOutput {
    pub fn new<C: Serialize, S: Serialize>(
        command: &'static str,
        table: CsvTable,
        config: C,
        summary: S,
    ) -> Self {
        let metadata = serde_json::to_value(Metadata::new(command, config, summary))
            .expect("metadata serializes");
        RunOutput { table, metadata }
    }

    pub fn metadata_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(&self.metadata).expect("metadata serializes");
        out.push(b'\n');
        out
    }

    /// `PREFIX.csv` and `PREFIX.json`, or CSV on stdout and JSON on stderr.
    pub fn write(&self, prefix: Option<&Path>) -> CliResult<()> {
        match prefix {
            Some(p) => {
                let (csv_path, json_path) = output_paths(p);
                if let Some(dir) = csv_path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir)?;
                }
                fs::write(csv_path, self.table.to_bytes())?;
                fs::write(json_path, self.metadata_bytes())?;
            }
            None => {
                io::stdout().write_all(&self.table.to_bytes())?;
                io::stderr().write_all(&self.metadata_bytes())?;
            }
        }
        Ok(())
    }
}

pub fn output_paths(prefix: &Path) -> (PathBuf, PathBuf) {
    let mut csv = prefix.as_os_str().to_owned();
    csv.push(".csv");
    let mut json = prefix.as_os_str().to_owned();
    json.push(".json");
    (csv.into(), json.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(-2.5), "-2.5");
        assert_eq!(fmt_num(123456.789012345), "123456.789012");
        assert_eq!(fmt_num(1e-7), "1e-7");
        assert_eq!(fmt_num(2.0 / 3.0 * 1e15), "6.66666666667e14");
        assert_eq!(fmt_num(0.000123456789012345), "0.000123456789012");
        assert_eq!(fmt_num(9.9999999999999), "10");
        assert_eq!(fmt_num(f64::NAN), "nan");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = CsvTable::new(&["a", "b"]);
        assert_eq!(t.to_bytes(), b"a,b\n");
    }

    #[test]
    fn one_record_two_lines() {
        let mut t = CsvTable::new(&["x", "v"]);
        t.push(vec![fmt_vector(&[1, -1]), fmt_num(0.5)]);
        assert_eq!(String::from_utf8(t.to_bytes()).unwrap(), "x,v\n1;-1,0.5\n");
    }

    #[test]
    #[should_panic]
    fn schema_is_enforced() {
        CsvTable::new(&["x"]).push(vec![]);
    }

    #[test]
    fn paths_append_extensions() {
        let (c, j) = output_paths(Path::new("out/run.v1"));
        assert_eq!(c, PathBuf::from("out/run.v1.csv"));
        assert_eq!(j, PathBuf::from("out/run.v1.json"));
    }
}
