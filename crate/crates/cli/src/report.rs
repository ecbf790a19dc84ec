//! JSON, CSV and text renderings of a report.

use std::collections::BTreeSet;

use frobkit_core::poly::fmt_degree;
use frobkit_core::BettiTable;
use serde_json::{json, Value};

use crate::run::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Text => to_text(report).into_bytes(),
    }
}

fn to_json(report: &Report) -> Vec<u8> {
    let results: Vec<Value> = report.results.iter().map(|r| r.to_json()).collect();
    let v = json!({
        "version": report.version,
        "input_sha256": report.input_sha256,
        "results": results,
    });
    let mut out = serde_json::to_vec(&v).expect("JSON values serialize");
    out.push(b'\n');
    out
}

fn to_csv(report: &Report) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["object", "n", "internal_degree", "beta"]).expect("in-memory write");
    for r in &report.results {
        for (object, table) in &r.tables {
            for ((n, d), beta) in table.entries() {
                w.write_record([object.clone(), n.to_string(), fmt_degree(&d), beta.to_string()])
                    .expect("in-memory write");
            }
        }
    }
    w.into_inner().expect("in-memory flush")
}

/// Rows are internal degrees, columns homological degrees.
pub fn betti_text(table: &BettiTable) -> String {
    let degrees: BTreeSet<_> = table.entries().map(|((_, d), _)| d).collect();
    let cols: Vec<i64> = (table.lo()..=table.cutoff()).collect();
    let mut rows = vec![std::iter::once("d\\n".to_string())
        .chain(cols.iter().map(|n| n.to_string()))
        .collect::<Vec<_>>()];
    for d in &degrees {
        let mut row = vec![fmt_degree(d)];
        for &n in &cols {
            let b = table.get(n, *d);
            row.push(if b == 0 { ".".into() } else { b.to_string() });
        }
        rows.push(row);
    }
    let mut total = vec!["total".to_string()];
    total.extend(cols.iter().map(|&n| table.total(n).to_string()));
    rows.push(total);
    align(&rows)
}

fn align(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(j, c)| format!("{c:>w$}", w = widths[j])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn to_text(report: &Report) -> String {
    let mut out = format!("frobkit {}  input {}\n", report.version, report.input_sha256);
    for (i, r) in report.results.iter().enumerate() {
        let outcome = r.outcome.map(|o| format!(" [{o}]")).unwrap_or_default();
        out.push_str(&format!("\n[{}] {} {}: {}{}\n", i + 1, r.command, r.args.join(" "), r.verdict, outcome));
        if let Some(err) = r.data.get("error").and_then(Value::as_str) {
            out.push_str(&format!("  error: {err}\n"));
        }
        if let Some(ev) = r.data.get("evidence").and_then(Value::as_array) {
            let mut rows = Vec::new();
            for e in ev {
                let field = |k: &str| e.get(k).and_then(Value::as_str).unwrap_or("").to_string();
                match field("kind").as_str() {
                    "growth" => rows.push(vec![field("object"), field("class")]),
                    "values" => {
                        let vals: Vec<&str> = e["values"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                        rows.push(vec![field("name"), vals.join(", ")]);
                    }
                    "text" => rows.push(vec![field("name"), field("value")]),
                    _ => {}
                }
            }
            for line in align(&rows).lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        for (key, v) in &r.data {
            if matches!(v, Value::String(_) | Value::Bool(_) | Value::Number(_)) && key != "error" && key != "claim" && key != "outcome" {
                out.push_str(&format!("  {key}: {}\n", v.as_str().map_or_else(|| v.to_string(), str::to_string)));
            }
        }
        for (object, table) in &r.tables {
            out.push_str(&format!("  {object}\n"));
            for line in betti_text(table).lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
    }
    out
}
