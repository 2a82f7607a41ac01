//! Serializable batch reports.
//!
//! Every report kind shares two framing fields — `schema` (currently 1)
//! and `kind` — so downstream tooling can dispatch without guessing.
//! Reports are deterministic: given the same catalog and caps, two runs
//! serialize byte-identically. Timings would break that, so they are
//! opt-in and excluded by default.

use crate::catalog::Catalog;
use crate::construct::BuildCaps;
use crate::predicates::decide;
use crate::verdict::{PropertyName, PropertyVerdict};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct MatrixReport {
    pub schema: u32,
    pub kind: &'static str,
    pub order_cap: usize,
    /// Column labels, sorted; every row's verdicts follow this order.
    pub properties: Vec<String>,
    /// One row per successfully built catalog entry, sorted by name.
    pub rings: Vec<MatrixRow>,
    /// Entries that failed to build; the run continues without them.
    pub build_failures: Vec<BuildFailure>,
}

#[derive(Debug, Serialize)]
pub struct MatrixRow {
    pub ring: String,
    pub expression: String,
    pub order: usize,
    pub verdicts: Vec<PropertyVerdict>,
}

#[derive(Debug, Serialize, Clone)]
pub struct BuildFailure {
    pub ring: String,
    pub expression: String,
    pub error: String,
}

/// Property columns of the matrix run: all decidable properties, sorted
/// by name.
pub fn matrix_columns() -> Vec<PropertyName> {
    let mut cols = PropertyName::ALL.to_vec();
    cols.sort_by_key(|p| p.as_str());
    cols
}

/// Decide every property for every catalog ring. Rows are computed in
/// parallel and then sorted by entry name; with `timings` off the result
/// is byte-stable across runs.
pub fn matrix_report(catalog: &Catalog, caps: &BuildCaps, timings: bool) -> MatrixReport {
    let columns = matrix_columns();
    let built = catalog.build_all(caps);
    let mut build_failures = Vec::new();
    let mut ok = Vec::new();
    for (entry, result) in built {
        match result {
            Ok(ring) => ok.push((entry, ring)),
            Err(e) => build_failures.push(BuildFailure {
                ring: entry.name,
                expression: entry.expression,
                error: e.to_string(),
            }),
        }
    }
    let mut rings: Vec<MatrixRow> = ok
        .par_iter()
        .map(|(entry, ring)| {
            let verdicts = columns
                .iter()
                .map(|&p| {
                    let start = Instant::now();
                    let v = decide(ring, p);
                    if timings {
                        v.with_elapsed(start.elapsed())
                    } else {
                        v
                    }
                })
                .collect();
            MatrixRow {
                ring: entry.name.clone(),
                expression: entry.expression.clone(),
                order: ring.order(),
                verdicts,
            }
        })
        .collect();
    rings.sort_by(|a, b| a.ring.cmp(&b.ring));
    build_failures.sort_by(|a, b| a.ring.cmp(&b.ring));
    MatrixReport {
        schema: SCHEMA_VERSION,
        kind: "matrix",
        order_cap: caps.order_cap,
        properties: columns.iter().map(|p| p.as_str().to_string()).collect(),
        rings,
        build_failures,
    }
}

impl MatrixReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width text rendering: one row per ring, one column per
    /// property, `+`/`-` cells.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name_w = self
            .rings
            .iter()
            .map(|r| r.ring.len())
            .chain(["ring".len()])
            .max()
            .unwrap_or(4);
        // Number the columns to keep the header narrow; print a legend.
        out.push_str("columns:\n");
        for (i, p) in self.properties.iter().enumerate() {
            out.push_str(&format!("  {:>2}  {}\n", i + 1, p));
        }
        out.push('\n');
        out.push_str(&format!("{:<name_w$}  order  ", "ring"));
        for i in 1..=self.properties.len() {
            out.push_str(&format!("{i:>3}"));
        }
        out.push('\n');
        for row in &self.rings {
            out.push_str(&format!("{:<name_w$}  {:>5}  ", row.ring, row.order));
            for v in &row.verdicts {
                out.push_str(&format!("{:>3}", if v.holds { "+" } else { "-" }));
            }
            out.push('\n');
        }
        for f in &self.build_failures {
            out.push_str(&format!("{:<name_w$}  BUILD FAILED: {}\n", f.ring, f.error));
        }
        out
    }
}
