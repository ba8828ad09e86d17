//! Deterministic text exports. Vertex order is the canonical lattice order
//! and every map is ordered, so equal reports give equal bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::verify::Status;
use super::{CensusReport, RingReport};

pub const CSV_HEADER: [&str; 20] = [
    "label",
    "order",
    "ideals",
    "max_ideals",
    "min_primes",
    "reduced",
    "local",
    "vertices",
    "edges",
    "alpha_strict",
    "alpha_unit",
    "alpha_t_strict",
    "alpha_t_unit",
    "complete",
    "bipartite",
    "genus",
    "reduced_genus",
    "passed",
    "failed",
    "failed_checks",
];

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn ring_json(report: &RingReport) -> Result<String> {
    json(report)
}

pub fn census_json(census: &CensusReport) -> Result<String> {
    json(census)
}

fn csv_row(r: &RingReport) -> Vec<String> {
    let count = |s: Status| r.theorems.iter().filter(|t| t.status == s).count();
    let failed: Vec<&str> = r.failures().map(|t| t.id.as_str()).collect();
    let a = &r.independence;
    vec![
        r.label.clone(),
        r.order.to_string(),
        r.ideal_count.to_string(),
        r.max_ideals.to_string(),
        r.min_primes.to_string(),
        r.is_reduced.to_string(),
        r.is_local.to_string(),
        r.graph.order.to_string(),
        r.graph.size.to_string(),
        a.strict.to_string(),
        a.unit.to_string(),
        a.t_strict.to_string(),
        a.t_unit.to_string(),
        r.graph.complete.to_string(),
        r.graph.bipartite.to_string(),
        r.genus.verdict.tag(),
        r.reduced_genus.tag(),
        count(Status::Pass).to_string(),
        count(Status::Fail).to_string(),
        failed.join(";"),
    ]
}

fn csv<'a>(rows: impl IntoIterator<Item = &'a RingReport>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(csv_row(r)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn ring_csv(report: &RingReport) -> Result<String> {
    csv([report])
}

pub fn census_csv(census: &CensusReport) -> Result<String> {
    csv(&census.rings)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot_graph(out: &mut String, r: &RingReport) {
    let _ = writeln!(out, "graph {} {{", quote(&format!("AG_N({})", r.label)));
    let _ = writeln!(out, "  label={};", quote(&format!("{} genus {}", r.label, r.genus.verdict)));
    for (v, name) in r.graph.vertices.iter().enumerate() {
        let style = if r.graph.in_nil[v] { ", style=filled" } else { "" };
        let _ = writeln!(out, "  {v} [label={}{style}];", quote(name));
    }
    for &(u, v) in &r.graph.edges {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
}

/// One `graph` block; vertices inside `Nil(R)` are filled.
pub fn ring_dot(report: &RingReport) -> String {
    let mut out = String::new();
    dot_graph(&mut out, report);
    out
}

/// One `graph` block per ring, in census order.
pub fn census_dot(census: &CensusReport) -> String {
    let mut out = String::new();
    for r in &census.rings {
        dot_graph(&mut out, r);
    }
    out
}
