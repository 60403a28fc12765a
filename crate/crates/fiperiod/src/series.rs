//! CSV series IO (`n,value` rows) and the JSON period report.

use std::fmt;

use serde::Serialize;

use fiperiod_core::fimod::{DimensionSeries, Provenance};
use fiperiod_core::period::PeriodReport;

#[derive(Debug)]
pub enum SeriesError {
    Empty,
    BadRow { line: usize, msg: String },
    NotContiguous { line: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::Empty => write!(f, "series CSV has no data rows"),
            SeriesError::BadRow { line, msg } => write!(f, "series CSV line {line}: {msg}"),
            SeriesError::NotContiguous { line } => {
                write!(f, "series CSV line {line}: levels must increase by 1")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

pub fn write_csv(rows: &[(usize, u64)]) -> String {
    let mut out = String::from("n,value\n");
    for (n, v) in rows {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}

/// Parse `n,value` rows; an optional `n,value` header line is skipped and
/// levels must be contiguous ascending.
pub fn parse_csv(text: &str) -> Result<DimensionSeries, SeriesError> {
    let mut start = None;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.trim();
        if row.is_empty() || (idx == 0 && row.eq_ignore_ascii_case("n,value")) {
            continue;
        }
        let (n_str, v_str) = row.split_once(',').ok_or_else(|| SeriesError::BadRow {
            line,
            msg: "expected `n,value`".into(),
        })?;
        let n: usize = n_str.trim().parse().map_err(|e| SeriesError::BadRow {
            line,
            msg: format!("bad level: {e}"),
        })?;
        let v: u64 = v_str.trim().parse().map_err(|e| SeriesError::BadRow {
            line,
            msg: format!("bad value: {e}"),
        })?;
        match start {
            None => start = Some(n),
            Some(s) => {
                if n != s + values.len() {
                    return Err(SeriesError::NotContiguous { line });
                }
            }
        }
        values.push(v);
    }
    match start {
        Some(start) if !values.is_empty() => Ok(DimensionSeries {
            start,
            values,
            provenance: Provenance::Computed,
        }),
        _ => Err(SeriesError::Empty),
    }
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub window: [usize; 2],
    pub min_margin: u64,
    pub period: Option<u64>,
    pub onset: Option<usize>,
    pub margin: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_of_p: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_exponent: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divides_bound: Option<bool>,
}

impl ReportJson {
    pub fn new(report: &PeriodReport, min_margin: u64) -> ReportJson {
        ReportJson {
            schema_version: 1,
            window: [report.window.0, report.window.1],
            min_margin,
            period: report.period,
            onset: report.onset,
            margin: report.margin,
            p: None,
            power_of_p: None,
            cover: None,
            bound_exponent: None,
            divides_bound: None,
        }
    }
}
