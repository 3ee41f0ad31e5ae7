//! CSV and JSON file handling. Floats are written with Rust's shortest
//! round-trip formatting, so identical inputs produce byte-identical
//! outputs.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Rows of one or two columns parsed from a CSV file. A non-numeric first
/// line is treated as a header and skipped; blank lines are ignored.
pub enum CsvData {
    One(Vec<f64>),
    Two(Vec<(f64, f64)>),
}

pub fn read_csv(path: &str) -> Result<CsvData, CliError> {
    let text = fs::read_to_string(path)?;
    let mut ones = Vec::new();
    let mut twos = Vec::new();
    let mut width: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse::<f64>().ok()).collect();
        let values = match parsed {
            Some(v) => v,
            None if lineno == 0 => continue, // header
            None => {
                return Err(CliError::Validation(format!(
                    "{path}:{}: could not parse '{line}' as numbers",
                    lineno + 1
                )))
            }
        };
        match (width.get_or_insert(values.len()), values.len()) {
            (1, 1) => ones.push(values[0]),
            (2, 2) => twos.push((values[0], values[1])),
            (expected, got) => {
                return Err(CliError::Validation(format!(
                    "{path}:{}: expected {expected} columns, got {got}",
                    lineno + 1
                )))
            }
        }
    }
    match width {
        Some(1) => Ok(CsvData::One(ones)),
        Some(2) => Ok(CsvData::Two(twos)),
        Some(w) => Err(CliError::Validation(format!(
            "{path}: unsupported column count {w}"
        ))),
        None => Err(CliError::Degenerate(format!("{path}: empty data file"))),
    }
}

pub fn write_univariate_csv(path: &str, draws: &[f64]) -> Result<(), CliError> {
    let mut out = String::from("x\n");
    for v in draws {
        out.push_str(&format!("{v}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn write_bivariate_csv(path: &str, pairs: &[(f64, f64)]) -> Result<(), CliError> {
    let mut out = String::from("x1,x2\n");
    for (a, b) in pairs {
        out.push_str(&format!("{a},{b}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn sidecar_path(out: &str) -> String {
    format!("{out}.meta.json")
}

pub fn write_json<T: Serialize>(path: &str, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Write JSON to a file when a path is given, otherwise to stdout.
pub fn emit_json<T: Serialize>(out: Option<&str>, value: &T) -> Result<(), CliError> {
    match out {
        Some(path) => write_json(path, value),
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

pub fn emit_text(out: Option<&str>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(Path::new(path), text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_spec(path: &str) -> Result<grlmp::DistSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read spec '{path}': {e}")))?;
    let spec: grlmp::DistSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid spec '{path}': {e}")))?;
    Ok(spec)
}
