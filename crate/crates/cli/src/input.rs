//! Strata tables and allocation files, as CSV or JSON.
//!
//! A file whose first non-blank byte is `{` is read as JSON, anything else as
//! CSV with a header row.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{CliError, Result};

const COLUMNS: [&str; 7] = ["stratum", "A", "c", "m", "M", "N", "S"];

/// Per-stratum columns in row order. Absent columns are `None`.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Table {
    pub labels: Vec<String>,
    pub a: Option<Vec<f64>>,
    pub c: Option<Vec<f64>>,
    pub m: Option<Vec<f64>>,
    pub upper: Option<Vec<f64>>,
    pub sizes: Option<Vec<f64>>,
    pub sd: Option<Vec<f64>>,
}

/// Scalars carried by a JSON input.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub struct Scalars {
    pub v: Option<f64>,
    pub a0: Option<f64>,
    pub c0: Option<f64>,
    pub vt: Option<f64>,
    pub n: Option<f64>,
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn parse_table(text: &str) -> Result<(Table, Scalars)> {
    if is_json(text) {
        parse_json_table(text)
    } else {
        Ok((parse_csv_table(text)?, Scalars::default()))
    }
}

fn parse_csv_table(text: &str) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    let mut seen = HashSet::new();
    for name in &header {
        if !COLUMNS.contains(&name.as_str()) {
            return Err(CliError::invalid(format!(
                "unknown column {name:?}; expected a subset of {}",
                COLUMNS.join(",")
            )));
        }
        if !seen.insert(name.as_str()) {
            return Err(CliError::invalid(format!("duplicate column {name:?}")));
        }
    }

    let mut labels = Vec::new();
    let mut numeric: Vec<Vec<f64>> = vec![Vec::new(); header.len()];
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        for (k, cell) in record.iter().enumerate() {
            if header[k] == "stratum" {
                labels.push(cell.to_owned());
            } else {
                numeric[k].push(number(cell, &header[k], row + 1)?);
            }
        }
    }
    let rows = numeric
        .iter()
        .zip(&header)
        .find(|(_, h)| *h != "stratum")
        .map_or(labels.len(), |(col, _)| col.len());
    if labels.is_empty() {
        labels = (1..=rows).map(|k| k.to_string()).collect();
    }

    let mut column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .map(|k| std::mem::take(&mut numeric[k]))
    };
    Ok(Table {
        a: column("A"),
        c: column("c"),
        m: column("m"),
        upper: column("M"),
        sizes: column("N"),
        sd: column("S"),
        labels,
    })
}

fn number(cell: &str, column: &str, row: usize) -> Result<f64> {
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::invalid(format!(
            "row {row}, column {column}: {cell:?} is not a finite number"
        ))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInput {
    strata: Vec<JsonRow>,
    #[serde(rename = "V")]
    v: Option<f64>,
    #[serde(rename = "A0")]
    a0: Option<f64>,
    c0: Option<f64>,
    #[serde(rename = "Vt")]
    vt: Option<f64>,
    n: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    stratum: Option<String>,
    #[serde(rename = "A")]
    a: Option<f64>,
    c: Option<f64>,
    m: Option<f64>,
    #[serde(rename = "M")]
    upper: Option<f64>,
    #[serde(rename = "N")]
    size: Option<f64>,
    #[serde(rename = "S")]
    sd: Option<f64>,
}

fn parse_json_table(text: &str) -> Result<(Table, Scalars)> {
    let input: JsonInput = serde_json::from_str(text)?;
    let rows = &input.strata;
    let labels = match rows.iter().filter(|r| r.stratum.is_some()).count() {
        0 => (1..=rows.len()).map(|k| k.to_string()).collect(),
        n if n == rows.len() => rows.iter().map(|r| r.stratum.clone().unwrap()).collect(),
        _ => {
            return Err(CliError::invalid(
                "field \"stratum\" must be given on every row or none",
            ))
        }
    };
    let column = |name: &str, get: fn(&JsonRow) -> Option<f64>| -> Result<Option<Vec<f64>>> {
        let values: Vec<Option<f64>> = rows.iter().map(get).collect();
        match values.iter().filter(|v| v.is_some()).count() {
            0 => Ok(None),
            n if n == rows.len() => Ok(Some(values.into_iter().flatten().collect())),
            _ => Err(CliError::invalid(format!(
                "field {name:?} must be given on every row or none"
            ))),
        }
    };
    let table = Table {
        a: column("A", |r| r.a)?,
        c: column("c", |r| r.c)?,
        m: column("m", |r| r.m)?,
        upper: column("M", |r| r.upper)?,
        sizes: column("N", |r| r.size)?,
        sd: column("S", |r| r.sd)?,
        labels,
    };
    let scalars = Scalars {
        v: input.v,
        a0: input.a0,
        c0: input.c0,
        vt: input.vt,
        n: input.n,
    };
    Ok((table, scalars))
}

/// `(label, value)` pairs from an allocation CSV (`stratum,value`) or from the
/// `allocation` array of a solve report.
pub fn parse_allocation(text: &str) -> Result<Vec<(String, f64)>> {
    if is_json(text) {
        #[derive(Deserialize)]
        struct Entry {
            stratum: String,
            value: f64,
        }
        #[derive(Deserialize)]
        struct ReportAllocation {
            allocation: Vec<Entry>,
        }
        let report: ReportAllocation = serde_json::from_str(text)?;
        return Ok(report
            .allocation
            .into_iter()
            .map(|e| (e.stratum, e.value))
            .collect());
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<&str> = reader.headers()?.iter().collect();
    if header != ["stratum", "value"] {
        return Err(CliError::invalid(
            "allocation CSV must have the header \"stratum,value\"",
        ));
    }
    reader
        .records()
        .enumerate()
        .map(|(row, record)| {
            let record = record?;
            Ok((record[0].to_owned(), number(&record[1], "value", row + 1)?))
        })
        .collect()
}
