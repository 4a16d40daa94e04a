//! Report envelope and JSON builders for command results.
//!
//! Every command emits one JSON report with the same envelope:
//! `{"command": ..., "input": ..., "result": ..., "tolerance": {...},
//! "version": ...}`. Structured positions inside `result` are always
//! instance labels, never numeric indices; violation lists are capped at
//! [`VIOLATION_CAP`] records with the uncapped count alongside.

use serde_json::{json, Value};

use sincov_core::analysis::AuditReport;
use sincov_core::instance::{Instance, Tolerance};
use sincov_core::reverse::{FZKind, ZeroReport};
use sincov_core::validate::ViolationReport;

use crate::format::CliEntry;

/// Maximum violation records retained in a report.
pub const VIOLATION_CAP: usize = 1000;

/// Wrap a command result in the common report envelope.
pub fn envelope(command: &str, input: Option<&str>, tol: &Tolerance, result: Value) -> Value {
    json!({
        "command": command,
        "input": input,
        "result": result,
        "tolerance": {
            "rel": tol.effective_rel(),
            "zero_tol": tol.effective_zero_tol(),
            "exact": tol.exact,
        },
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// Serialize the report as the CLI prints it: pretty JSON plus newline.
pub fn to_text(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report JSON serializes");
    s.push('\n');
    s
}

/// Triple-sweep outcome with violating triples named by label.
pub fn violations_json<T: CliEntry>(labels: &[String], report: &ViolationReport<T>) -> Value {
    let shown: Vec<Value> = report
        .violations
        .iter()
        .take(VIOLATION_CAP)
        .map(|v| {
            json!({
                "x": labels[v.x],
                "y": labels[v.y],
                "z": labels[v.z],
                "lhs": v.lhs.json_value(),
                "rhs": v.rhs.json_value(),
                "gap": v.gap.json_value(),
            })
        })
        .collect();
    json!({
        "law": report.law.as_str(),
        "pass": report.pass,
        "checked_triples": report.checked_triples,
        "total_violations": report.total_violations,
        "violations": shown,
    })
}

/// Structure audit of a multiplicative upper-law candidate.
pub fn audit_json<T: CliEntry>(report: &AuditReport<T>) -> Value {
    json!({
        "not_a_solution": report.not_a_solution,
        "has_nonpositive": report.has_nonpositive,
        "has_zero": report.has_zero,
        "all_zero": report.all_zero,
        "diag_min": report.diag_min.json_value(),
        "diag_max": report.diag_max.json_value(),
        "bound_c": report.bound_c.as_ref().map(CliEntry::json_value),
        "lower_bound_ok": report.lower_bound_ok,
        "sandwich_ok": report.sandwich_ok,
        "z_property_sections": report.z_property_sections,
    })
}

/// Zero-set structure with anchors and cross sets named by label.
pub fn zeros_json(labels: &[String], report: &ZeroReport) -> Value {
    let outcomes: Vec<Value> = report
        .outcomes
        .iter()
        .map(|o| {
            let (a, b) = o.anchor;
            let mut obj = json!({
                "anchor": [labels[a], labels[b]],
            });
            let map = obj.as_object_mut().expect("object literal");
            match &o.kind {
                FZKind::RowContained => {
                    map.insert("kind".into(), json!("row-contained"));
                }
                FZKind::ColumnContained => {
                    map.insert("kind".into(), json!("column-contained"));
                }
                FZKind::Cross { u1, u2 } => {
                    map.insert("kind".into(), json!("cross"));
                    let name = |ix: &Vec<usize>| -> Vec<&str> {
                        ix.iter().map(|&i| labels[i].as_str()).collect()
                    };
                    map.insert("u1".into(), json!(name(u1)));
                    map.insert("u2".into(), json!(name(u2)));
                }
                FZKind::AlternativeViolated { witness } => {
                    map.insert("kind".into(), json!("alternative-violated"));
                    map.insert("witness".into(), json!(labels[*witness]));
                }
            }
            obj
        })
        .collect();
    json!({
        "zero_count": report.zero_set.pairs.len(),
        "row_contained": report.row_contained,
        "column_contained": report.column_contained,
        "cross": report.cross,
        "violated": report.violated,
        "outcomes": outcomes,
    })
}

/// Embedded instance object (labels, mode, matrix).
pub fn instance_json<T: CliEntry>(inst: &Instance<T>) -> Value {
    crate::format::instance_to_json(inst)
}
