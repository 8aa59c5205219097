//! Report formatting: the CSV schema, JSON reports, and human tables.
//!
//! CSV floats use the shortest round-trip representation, so parsing a report
//! and re-emitting it reproduces the input byte for byte.

use crate::dielectric::ModelKind;
use crate::engine::{ForceResult, TermBreakdown};
use serde::Serialize;

/// One computed sweep point, in the fixed CSV schema.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub a_um: f64,
    pub model: ModelKind,
    /// Force magnitude (pN).
    pub force_pn: f64,
    pub converged: bool,
    pub l_used: u32,
    /// Total relative error estimate (quadrature + truncation).
    pub rel_err_est: f64,
}

impl SweepRow {
    pub fn from_result(a_um: f64, model: ModelKind, result: &ForceResult) -> Self {
        Self {
            a_um,
            model,
            force_pn: result.magnitude * 1e12,
            converged: result.converged,
            l_used: result.l_used,
            rel_err_est: result.relative_error_estimate(),
        }
    }
}

pub fn csv_header() -> &'static str {
    "a_um,model,force_pN,converged,l_used,rel_err_est"
}

fn csv_line(row: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{:e}",
        row.a_um, row.model, row.force_pn, row.converged, row.l_used, row.rel_err_est
    )
}

pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(csv_header());
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(row));
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == csv_header() => {}
        other => return Err(format!("bad CSV header: {other:?}")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(format!("line {}: expected 6 fields, got {}", i + 2, fields.len()));
        }
        rows.push(SweepRow {
            a_um: fields[0].parse().map_err(|e| format!("line {}: a_um: {e}", i + 2))?,
            model: fields[1].parse().map_err(|e| format!("line {}: model: {e}", i + 2))?,
            force_pn: fields[2].parse().map_err(|e| format!("line {}: force_pN: {e}", i + 2))?,
            converged: fields[3].parse().map_err(|e| format!("line {}: converged: {e}", i + 2))?,
            l_used: fields[4].parse().map_err(|e| format!("line {}: l_used: {e}", i + 2))?,
            rel_err_est: fields[5].parse().map_err(|e| format!("line {}: rel_err_est: {e}", i + 2))?,
        });
    }
    Ok(rows)
}

/// JSON report for one force evaluation. `result` carries every engine field
/// (including the per-term breakdown) and is populated under --verbose.
#[derive(Debug, Serialize)]
pub struct PointReport {
    pub a_um: f64,
    pub model: ModelKind,
    pub force_pn: f64,
    pub force_n: f64,
    pub converged: bool,
    pub l_used: u32,
    pub rel_err_est: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<VerboseResult>,
}

#[derive(Debug, Serialize)]
pub struct VerboseResult {
    pub force: f64,
    pub magnitude: f64,
    pub truncation_bound: f64,
    pub terms: Vec<TermBreakdown>,
}

impl PointReport {
    pub fn new(a_um: f64, model: ModelKind, result: &ForceResult, verbose: bool) -> Self {
        Self {
            a_um,
            model,
            force_pn: result.magnitude * 1e12,
            force_n: result.force,
            converged: result.converged,
            l_used: result.l_used,
            rel_err_est: result.relative_error_estimate(),
            result: verbose.then(|| VerboseResult {
                force: result.force,
                magnitude: result.magnitude,
                truncation_bound: result.truncation_bound,
                terms: result.terms.clone(),
            }),
        }
    }
}

/// Aligned human-readable sweep table.
pub fn human_table(rows: &[SweepRow], precision: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:>8}  {:<10}  {:>14}\n", "a (um)", "model", "|F| (pN)"));
    for row in rows {
        out.push_str(&format!(
            "{:>8}  {:<10}  {:>14.prec$}\n",
            row.a_um,
            row.model.name(),
            row.force_pn,
            prec = precision
        ));
    }
    out
}
