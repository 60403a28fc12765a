//! JSON cohomology tables: per-module dimension entries keyed by (level,
//! degree), the input format for the induced-module assembly.
//!
//! ```json
//! { "module": "w", "entries": [ {"m": 3, "t": 1, "dim": 0} ] }
//! ```

use serde::{Deserialize, Serialize};

use fiperiod_core::cohomology::CohomologyTable;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub module: String,
    pub entries: Vec<TableEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TableEntryJson {
    pub m: usize,
    pub t: usize,
    pub dim: u64,
}

pub fn parse_table(text: &str) -> Result<(String, CohomologyTable), serde_json::Error> {
    let json: TableJson = serde_json::from_str(text)?;
    let mut table = CohomologyTable::new();
    for e in &json.entries {
        table.insert(e.m, e.t, e.dim);
    }
    Ok((json.module, table))
}

pub fn table_to_json(label: &str, table: &CohomologyTable) -> TableJson {
    TableJson {
        module: label.to_string(),
        entries: table
            .entries()
            .map(|(m, t, dim)| TableEntryJson { m, t, dim })
            .collect(),
    }
}
