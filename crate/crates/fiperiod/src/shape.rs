//! JSON resolution shapes for the bound calculators.
//!
//! ```json
//! { "p": 2,
//!   "columns": [ { "rows": [ {"degrees": [0, 3, 3]} ], "C": null, "Dx": 3 },
//!                { "rows": [ {"degrees": [0, 2]} ] } ],
//!   "wiring": [ { "pairs": [[2, 1]] } ] }
//! ```
//!
//! `wiring[x]` connects column x to column x+1; `pairs` are 1-based
//! [source generator, target generator] matchings. Multi-row columns may
//! carry `row_wiring` (vertical maps between consecutive rows) and per-row
//! horizontal wirings via `{"per_row": [ {"pairs": ...}, null, ... ]}`.

use std::fmt;

use serde::Deserialize;

use fiperiod_core::bounds::{
    ColumnWiring, CoverShape, ResolutionColumn, ResolutionShape, SequentialWiring,
};

#[derive(Debug)]
pub enum ShapeParseError {
    Json(serde_json::Error),
    Semantic(String),
}

impl fmt::Display for ShapeParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeParseError::Json(e) => write!(f, "shape JSON: {e}"),
            ShapeParseError::Semantic(msg) => write!(f, "shape: {msg}"),
        }
    }
}

impl std::error::Error for ShapeParseError {}

impl From<serde_json::Error> for ShapeParseError {
    fn from(e: serde_json::Error) -> ShapeParseError {
        ShapeParseError::Json(e)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeJson {
    p: u64,
    columns: Vec<ColumnJson>,
    #[serde(default)]
    wiring: Vec<WiringJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColumnJson {
    rows: Vec<RowJson>,
    #[serde(default)]
    row_wiring: Vec<Option<PairsJson>>,
    #[serde(rename = "C")]
    c: Option<u64>,
    #[serde(rename = "Dx")]
    dx: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowJson {
    degrees: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairsJson {
    pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WiringJson {
    pairs: Option<Vec<(usize, usize)>>,
    per_row: Option<Vec<Option<PairsJson>>>,
}

fn wiring_from_pairs(
    source: &CoverShape,
    target: &CoverShape,
    pairs: &[(usize, usize)],
    ctx: &str,
) -> Result<SequentialWiring, ShapeParseError> {
    let mut zero_based = Vec::with_capacity(pairs.len());
    for &(i, k) in pairs {
        if i == 0 || k == 0 {
            return Err(ShapeParseError::Semantic(format!(
                "{ctx}: pair indices are 1-based; 0 is out of range"
            )));
        }
        zero_based.push((i - 1, k - 1));
    }
    SequentialWiring::new(source.clone(), target.clone(), zero_based)
        .map_err(|e| ShapeParseError::Semantic(format!("{ctx}: {e}")))
}

pub fn parse_shape(text: &str) -> Result<ResolutionShape, ShapeParseError> {
    let spec: ShapeJson = serde_json::from_str(text)?;
    let p = spec.p;
    let mut columns = Vec::with_capacity(spec.columns.len());
    for (x, col) in spec.columns.iter().enumerate() {
        let mut rows = Vec::with_capacity(col.rows.len());
        for (u, row) in col.rows.iter().enumerate() {
            rows.push(
                CoverShape::new(p, row.degrees.clone()).map_err(|e| {
                    ShapeParseError::Semantic(format!("column {x} row {u}: {e}"))
                })?,
            );
        }
        let mut row_wiring = Vec::new();
        for (u, w) in col.row_wiring.iter().enumerate() {
            if u + 1 >= rows.len() {
                return Err(ShapeParseError::Semantic(format!(
                    "column {x}: row_wiring entry {u} has no next row"
                )));
            }
            row_wiring.push(match w {
                Some(pj) => Some(wiring_from_pairs(
                    &rows[u],
                    &rows[u + 1],
                    &pj.pairs,
                    &format!("column {x} row_wiring {u}"),
                )?),
                None => None,
            });
        }
        columns.push(ResolutionColumn {
            rows,
            row_wiring,
            onset: col.c,
            gen_degree: col.dx,
        });
    }
    let mut wiring = Vec::new();
    for (x, w) in spec.wiring.iter().enumerate() {
        if x + 1 >= columns.len() {
            return Err(ShapeParseError::Semantic(format!(
                "wiring entry {x} has no next column"
            )));
        }
        let (here, next) = (&columns[x], &columns[x + 1]);
        let per_row = match (&w.pairs, &w.per_row) {
            (Some(pairs), None) => {
                vec![Some(wiring_from_pairs(
                    &here.rows[0],
                    &next.rows[0],
                    pairs,
                    &format!("wiring {x}"),
                )?)]
            }
            (None, Some(rows)) => {
                let mut out = Vec::with_capacity(rows.len());
                for (u, entry) in rows.iter().enumerate() {
                    if u >= here.rows.len() || u >= next.rows.len() {
                        return Err(ShapeParseError::Semantic(format!(
                            "wiring {x} per_row entry {u} has no matching rows"
                        )));
                    }
                    out.push(match entry {
                        Some(pj) => Some(wiring_from_pairs(
                            &here.rows[u],
                            &next.rows[u],
                            &pj.pairs,
                            &format!("wiring {x} per_row {u}"),
                        )?),
                        None => None,
                    });
                }
                out
            }
            (None, None) => Vec::new(),
            (Some(_), Some(_)) => {
                return Err(ShapeParseError::Semantic(format!(
                    "wiring entry {x}: give either `pairs` or `per_row`, not both"
                )))
            }
        };
        wiring.push(ColumnWiring { per_row });
    }
    while wiring.len() + 1 < columns.len() {
        wiring.push(ColumnWiring::default());
    }
    let shape = ResolutionShape { p, columns, wiring };
    shape
        .validate()
        .map_err(|e| ShapeParseError::Semantic(e.to_string()))?;
    Ok(shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fiperiod_core::bounds::{resolution_finals, vector_finals};

    #[test]
    fn parses_single_column_shape() {
        let shape = parse_shape(r#"{ "p": 2, "columns": [ { "rows": [ {"degrees": [3]} ] } ] }"#)
            .unwrap();
        let f = resolution_finals(&shape, 1).unwrap();
        assert_eq!(f.m_inf, 6);
    }

    #[test]
    fn parses_wired_shape_with_onsets() {
        let text = r#"{ "p": 2,
          "columns": [ { "rows": [ {"degrees": [0, 3, 3]} ], "C": 11, "Dx": 3 },
                       { "rows": [ {"degrees": [3, 2]} ], "C": 4 } ],
          "wiring": [ { "pairs": [[2, 1], [3, 1]] } ] }"#;
        // second pair reuses target 1: injectivity violation
        assert!(parse_shape(text).is_err());
        let text = r#"{ "p": 2,
          "columns": [ { "rows": [ {"degrees": [0, 3, 3]} ], "C": 11, "Dx": 3 },
                       { "rows": [ {"degrees": [3, 2]} ], "C": 4 } ],
          "wiring": [ { "pairs": [[2, 1]] } ] }"#;
        let shape = parse_shape(text).unwrap();
        let f = resolution_finals(&shape, 0).unwrap();
        assert_eq!(f.onset, Some(11));
        assert!(f.m_inf >= 6);
    }

    #[test]
    fn parses_multi_row_columns() {
        let text = r#"{ "p": 3,
          "columns": [
            { "rows": [ {"degrees": [2]}, {"degrees": [1]} ],
              "row_wiring": [ null ] },
            { "rows": [ {"degrees": [2]} ] } ],
          "wiring": [ { "per_row": [ {"pairs": [[1, 1]]} ] } ] }"#;
        let shape = parse_shape(text).unwrap();
        assert!(vector_finals(&shape, 1).is_ok());
    }

    #[test]
    fn rejects_degree_mismatched_pairs() {
        let text = r#"{ "p": 2,
          "columns": [ { "rows": [ {"degrees": [1]} ] },
                       { "rows": [ {"degrees": [2]} ] } ],
          "wiring": [ { "pairs": [[1, 1]] } ] }"#;
        assert!(parse_shape(text).is_err());
    }

    #[test]
    fn rejects_zero_based_pairs() {
        let text = r#"{ "p": 2,
          "columns": [ { "rows": [ {"degrees": [1]} ] },
                       { "rows": [ {"degrees": [1]} ] } ],
          "wiring": [ { "pairs": [[0, 1]] } ] }"#;
        assert!(parse_shape(text).is_err());
    }
}
