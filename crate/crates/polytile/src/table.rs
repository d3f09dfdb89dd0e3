//! Reproduction tables: one row per candidate with its unit-volume area,
//! the published value and the difference.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::thread;

use serde::Serialize;

use polytile_core::candidates::{build, build_from_type, catalog, CandidateSpec, Catalog, Construction};
use polytile_core::combinatorics::CombinatorialType;
use polytile_core::optimize::OptimizeOptions;

use crate::error::{IoError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    /// Within tolerance of the published value, or no published value.
    Pass,
    /// Built, but outside tolerance.
    Fail,
    /// The construction raised an error.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub name: String,
    pub n: usize,
    /// Unit-volume area rounded to four decimals.
    pub surface_area: Option<f64>,
    pub expected: Option<f64>,
    /// `surface_area - expected`.
    pub delta: Option<f64>,
    pub tolerance: f64,
    pub status: RowStatus,
    pub provenance: String,
    /// Error message for rows that could not be built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

impl TableRow {
    /// Row for `spec` from a built area (unrounded) or a construction error.
    pub fn new(spec: &CandidateSpec, area: std::result::Result<f64, String>) -> TableRow {
        let (surface_area, status, error) = match area {
            Ok(a) => {
                let within = spec.expected_area.is_none_or(|e| (a - e).abs() <= spec.tolerance);
                (Some(round4(a)), if within { RowStatus::Pass } else { RowStatus::Fail }, None)
            }
            Err(e) => (None, RowStatus::Error, Some(e)),
        };
        let delta = match (surface_area, spec.expected_area) {
            (Some(a), Some(e)) => Some(round4(a - e)),
            _ => None,
        };
        TableRow {
            name: spec.name.to_string(),
            n: spec.faces,
            surface_area,
            expected: spec.expected_area,
            delta,
            tolerance: spec.tolerance,
            status,
            provenance: spec.provenance.to_string(),
            error,
        }
    }
}

fn area_of(spec: &CandidateSpec, types: &BTreeMap<String, CombinatorialType>) -> std::result::Result<f64, String> {
    let built = match (spec.construction, types.get(spec.name)) {
        (Construction::TypeFile, Some(ty)) => {
            build_from_type(spec.name, ty, &OptimizeOptions::default()).map(|o| o.polyhedron)
        }
        _ => build(spec.name),
    };
    built.and_then(|p| p.measures()).map(|m| m.surface_area).map_err(|e| e.to_string())
}

/// Builds the entries concurrently; rows come back ordered by face count,
/// then name.
fn rows_for(specs: &[&'static CandidateSpec], types: &BTreeMap<String, CombinatorialType>) -> Vec<TableRow> {
    thread::scope(|scope| {
        let handles: Vec<_> =
            specs.iter().map(|&spec| scope.spawn(move || TableRow::new(spec, area_of(spec, types)))).collect();
        handles.into_iter().map(|h| h.join().expect("candidate builder panicked")).collect()
    })
}

/// The conjectured minimizer for every face count.
pub fn table1() -> Vec<TableRow> {
    rows_for(&catalog(Catalog::Conjectured), &BTreeMap::new())
}

/// Competing tiles. Entries that need a combinatorial-type file are left
/// out unless `types` supplies one; their names are returned as warnings.
pub fn table2(types: &BTreeMap<String, CombinatorialType>) -> (Vec<TableRow>, Vec<String>) {
    let mut warnings = Vec::new();
    let specs: Vec<_> = catalog(Catalog::Competitor)
        .into_iter()
        .filter(|s| {
            let keep = s.construction != Construction::TypeFile || types.contains_key(s.name);
            if !keep {
                warnings.push(format!("skipping {}: no combinatorial-type file supplied", s.name));
            }
            keep
        })
        .collect();
    (rows_for(&specs, types), warnings)
}

/// 0 when every row passes, 1 when some value misses its tolerance, 3 when
/// a construction failed.
pub fn exit_status(rows: &[TableRow]) -> u8 {
    if rows.iter().any(|r| r.status == RowStatus::Error) {
        3
    } else if rows.iter().any(|r| r.status == RowStatus::Fail) {
        1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn fixed(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.4}")).unwrap_or_default()
}

fn status_word(r: &TableRow) -> &'static str {
    match r.status {
        RowStatus::Pass => "pass",
        RowStatus::Fail => "fail",
        RowStatus::Error => "error",
    }
}

pub fn render(rows: &[TableRow], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(rows).map(|s| s + "\n").map_err(|e| IoError::Output(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = ["name", "n", "surface_area", "expected", "delta", "tolerance", "status", "provenance"];
            w.write_record(header).map_err(|e| IoError::Output(e.to_string()))?;
            for r in rows {
                w.write_record([
                    r.name.clone(),
                    r.n.to_string(),
                    fixed(r.surface_area),
                    fixed(r.expected),
                    fixed(r.delta),
                    format!("{:e}", r.tolerance),
                    status_word(r).to_string(),
                    r.provenance.clone(),
                ])
                .map_err(|e| IoError::Output(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| IoError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| IoError::Output(e.to_string()))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<28} {:>3} {:>9} {:>9} {:>8} {:>7}  status",
                "name", "n", "area", "expected", "delta", "tol"
            );
            for r in rows {
                let area = r.surface_area.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    out,
                    "{:<28} {:>3} {:>9} {:>9} {:>8} {:>7}  {}",
                    r.name,
                    r.n,
                    area,
                    fixed(r.expected),
                    r.delta.map(|d| format!("{d:+.4}")).unwrap_or_default(),
                    format!("{:.0e}", r.tolerance),
                    status_word(r)
                );
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "    {e}");
                }
            }
            Ok(out)
        }
    }
}
