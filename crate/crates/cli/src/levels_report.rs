//! Level tables as CSV or JSON, and the inverse parsers used for round trips.

use riskcurves_core::levels::{LevelTable, ParallelFamily};
use serde::{Deserialize, Serialize};

use crate::fixed::{self, fmt6};
use crate::CliError;

pub const CSV_HEADER: [&str; 6] = ["probability", "impact", "level", "h", "boundary_gap", "flagged"];

/// One lattice cell as emitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRow {
    #[serde(serialize_with = "fixed::serialize")]
    pub probability: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub impact: f64,
    pub level: usize,
    #[serde(serialize_with = "fixed::serialize")]
    pub h: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub boundary_gap: f64,
    pub flagged: bool,
}

/// The JSON form of a level table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelsDoc {
    #[serde(serialize_with = "fixed::serialize")]
    pub c: f64,
    pub r: usize,
    #[serde(serialize_with = "fixed::serialize")]
    pub h_step: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub tolerance: f64,
    /// Level matrix, one row per impact class from the lowest.
    pub levels: Vec<Vec<usize>>,
    pub cells: Vec<LevelRow>,
}

pub fn rows(table: &LevelTable) -> Vec<LevelRow> {
    table
        .cells
        .iter()
        .map(|c| LevelRow { probability: c.point.x, impact: c.point.y, level: c.level, h: c.h, boundary_gap: c.boundary_gap, flagged: c.flagged })
        .collect()
}

pub fn document(family: &ParallelFamily, table: &LevelTable) -> LevelsDoc {
    let m = table.grid.m();
    LevelsDoc {
        c: family.c(),
        r: table.r,
        h_step: table.h_step,
        tolerance: table.tolerance,
        levels: table.cells.chunks(m).map(|row| row.iter().map(|c| c.level).collect()).collect(),
        cells: rows(table),
    }
}

pub fn to_csv(rows: &[LevelRow]) -> String {
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{},{},{}\n", fmt6(r.probability), fmt6(r.impact), r.level, fmt6(r.h), fmt6(r.boundary_gap), r.flagged));
    }
    out
}

pub fn from_csv(text: &str) -> Result<Vec<LevelRow>, CliError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| CliError::Validation(format!("levels csv: {e}")))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::Validation(format!("levels csv: unexpected header {:?}", header.iter().collect::<Vec<_>>())));
    }
    reader
        .deserialize()
        .map(|r| r.map_err(|e| CliError::Validation(format!("levels csv: {e}"))))
        .collect()
}

pub fn to_json(doc: &LevelsDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("finite level table");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<LevelsDoc, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("levels json: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use riskcurves_core::levels::{build_family, level_table, ClassGrid};

    fn table() -> (ParallelFamily, LevelTable) {
        let g = ClassGrid::default();
        let f = build_family(&g, 6).unwrap();
        let t = level_table(&f, &g).unwrap();
        (f, t)
    }

    #[test]
    fn csv_shape_and_round_trip() {
        let (_, t) = table();
        let csv = to_csv(&rows(&t));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 64);
        assert_eq!(lines[0], "probability,impact,level,h,boundary_gap,flagged");
        assert!(lines[1].starts_with("1.000000,1.000000,1,"), "{}", lines[1]);
        assert!(lines[63].starts_with("9.000000,7.000000,7,"), "{}", lines[63]);
        assert_eq!(to_csv(&from_csv(&csv).unwrap()), csv);
    }

    #[test]
    fn json_round_trip() {
        let (f, t) = table();
        let json = to_json(&document(&f, &t));
        let doc = from_json(&json).unwrap();
        assert_eq!(doc.levels.len(), 7);
        assert_eq!(doc.levels[6][6], 7);
        assert_eq!(to_json(&doc), json);
    }

    #[test]
    fn header_checked() {
        assert!(from_csv("a,b\n1,2\n").is_err());
    }
}
