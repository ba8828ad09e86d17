//! Ring specifications, per-ring reports, theorem checks over a census of
//! rings, and DOT/JSON/CSV export.

mod config;
mod export;
mod parse;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use config::{parse_census_config, CensusEntry};
pub use export::{census_csv, census_dot, census_json, ring_csv, ring_dot, ring_json, CSV_HEADER};
pub use parse::{parse_poly, parse_ring_spec, RingExpr, RingSpec};
pub use verify::{Status, TheoremVerdict, THEOREM_IDS};

use crate::error::Result;
use crate::exec::{self, Exec};
use crate::genus::{classify_genus, GenusClass, SearchOptions, Verdict, DEFAULT_BUDGET_MS, DEFAULT_SEED};
use crate::graph::{independence_number, DEFAULT_INDEPENDENCE_BOUND};
use crate::lattice::{analyze_lattice, LatticeOptions};
use crate::nil_graph::{build_nil_graph, build_nil_graph_with_unit, t_subgraph};
use crate::ring::DEFAULT_MAX_ORDER;

pub const SCHEMA_VERSION: u32 = 1;

/// The shipped census configuration.
pub const DEFAULT_CENSUS: &str = include_str!("../../data/default_census.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub budget_ms: u64,
    pub max_ring_order: usize,
    pub independence_bound: usize,
    pub exec: Exec,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: DEFAULT_SEED,
            budget_ms: DEFAULT_BUDGET_MS,
            max_ring_order: DEFAULT_MAX_ORDER,
            independence_bound: DEFAULT_INDEPENDENCE_BOUND,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub order: usize,
    pub size: usize,
    /// Ideal labels in vertex order.
    pub vertices: Vec<String>,
    pub in_nil: Vec<bool>,
    pub edges: Vec<(usize, usize)>,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub complete: bool,
    pub regular: Option<usize>,
    pub bipartite: bool,
    pub complete_bipartite: Option<(usize, usize)>,
    pub tree: bool,
    pub star: bool,
}

/// Independence numbers. `strict` excludes the unit ideal; `unit` adds `R`
/// as a vertex adjacent to the ideals inside `Nil(R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub strict: usize,
    pub unit: usize,
    pub t_strict: usize,
    pub t_unit: usize,
    /// A maximum independent set of the nil-graph, by vertex id.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub schema_version: u32,
    pub label: String,
    pub order: usize,
    pub ideal_count: usize,
    pub max_ideals: usize,
    pub min_primes: usize,
    pub is_reduced: bool,
    pub is_local: bool,
    /// Ideal count of each local factor, in factor order.
    pub local_factor_ideals: Vec<usize>,
    pub graph: GraphReport,
    pub independence: IndependenceReport,
    pub genus: GenusClass,
    /// Verdict for the graph with its degree-one vertices removed.
    pub reduced_genus: Verdict,
    pub theorems: Vec<TheoremVerdict>,
}

impl RingReport {
    pub fn theorem(&self, id: &str) -> Option<&TheoremVerdict> {
        self.theorems.iter().find(|t| t.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.theorems.iter().filter(|t| t.status == Status::Fail)
    }
}

pub fn analyze(spec: &RingSpec, opts: &AnalysisOptions) -> Result<RingReport> {
    analyze_with_budget(spec, opts, opts.budget_ms)
}

fn analyze_with_budget(spec: &RingSpec, opts: &AnalysisOptions, budget_ms: u64) -> Result<RingReport> {
    let ring = spec.build(opts.max_ring_order)?;
    let lattice = analyze_lattice(&ring, &LatticeOptions { max_order: opts.max_ring_order, exec: opts.exec })?;
    let g = build_nil_graph(&ring, &lattice, opts.exec);
    let gu = build_nil_graph_with_unit(&ring, &lattice, opts.exec);
    let t = t_subgraph(&ring, &lattice, false, opts.exec)?;
    let tu = t_subgraph(&ring, &lattice, true, opts.exec)?;
    let bound = opts.independence_bound;
    let (strict, witness) = independence_number(&g.graph, bound)?;
    let independence = IndependenceReport {
        strict,
        unit: independence_number(&gu.graph, bound)?.0,
        t_strict: independence_number(&t.graph, bound)?.0,
        t_unit: independence_number(&tu.graph, bound)?.0,
        witness,
    };
    let search = SearchOptions::from_millis(budget_ms, opts.seed, opts.exec);
    let genus = classify_genus(&g.graph, &search);
    let reduced_genus = classify_genus(&g.graph.reduction(), &search).verdict;
    let gr = &g.graph;
    let graph = GraphReport {
        order: gr.order(),
        size: gr.size(),
        vertices: gr.labels().to_vec(),
        in_nil: g.in_nil.clone(),
        edges: gr.edges(),
        degree_histogram: gr.degree_histogram(),
        complete: gr.is_complete(),
        regular: gr.regularity(),
        bipartite: gr.is_bipartite(),
        complete_bipartite: gr.complete_bipartite_sides(),
        tree: gr.is_tree(),
        star: gr.is_star(),
    };
    let mut report = RingReport {
        schema_version: SCHEMA_VERSION,
        label: spec.label(),
        order: ring.order(),
        ideal_count: lattice.ideals.len(),
        max_ideals: lattice.maximal.len(),
        min_primes: lattice.minimal_primes.len(),
        is_reduced: lattice.is_reduced,
        is_local: lattice.is_local,
        local_factor_ideals: lattice.local_factor_ideal_counts(&ring),
        graph,
        independence,
        genus,
        reduced_genus,
        theorems: Vec::new(),
    };
    report.theorems = verify::evaluate(&verify::Facts { spec, ring: &ring, lattice: &lattice, g: &g, report: &report });
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub id: String,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema_version: u32,
    pub seed: u64,
    pub budget_ms: u64,
    /// Sorted by label.
    pub rings: Vec<RingReport>,
    pub summary: Vec<TheoremSummary>,
}

impl CensusReport {
    pub fn ring(&self, label: &str) -> Option<&RingReport> {
        self.rings.iter().find(|r| r.label == label)
    }

    /// `(ring label, verdict)` for every failed check.
    pub fn failures(&self) -> Vec<(&str, &TheoremVerdict)> {
        self.rings
            .iter()
            .flat_map(|r| r.failures().map(move |t| (r.label.as_str(), t)))
            .collect()
    }
}

/// Analyzes every entry (in parallel under `Exec::Parallel`) and orders the
/// reports by label.
pub fn run_census(entries: &[CensusEntry], opts: &AnalysisOptions) -> Result<CensusReport> {
    let mut rings = exec::map_slice(opts.exec, entries, |e| {
        analyze_with_budget(&e.spec, opts, e.budget_ms.unwrap_or(opts.budget_ms))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    rings.sort_by(|a, b| a.label.cmp(&b.label));
    let summary = THEOREM_IDS
        .iter()
        .map(|&id| {
            let count = |s: Status| rings.iter().filter(|r| r.theorem(id).is_some_and(|t| t.status == s)).count();
            TheoremSummary {
                id: id.to_string(),
                pass: count(Status::Pass),
                fail: count(Status::Fail),
                not_applicable: count(Status::NotApplicable),
            }
        })
        .collect();
    Ok(CensusReport { schema_version: SCHEMA_VERSION, seed: opts.seed, budget_ms: opts.budget_ms, rings, summary })
}

pub fn default_census() -> Vec<CensusEntry> {
    parse_census_config(DEFAULT_CENSUS).expect("shipped census parses")
}
