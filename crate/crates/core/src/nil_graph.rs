//! The nil-graph `AG_N(R)`, the annihilating-ideal graph `AG(R)` and the
//! idempotent-support subgraph `G_T(R)`.
//!
//! Vertices are lattice indices in canonical lattice order. A vertex of
//! `AG_N(R)` is a non-trivial ideal `I` with some non-trivial `J` (possibly
//! `J = I`) such that `IJ ⊆ Nil(R)`; distinct vertices are adjacent when their
//! product lies in `Nil(R)`. `AG(R)` uses `(0)` in place of `Nil(R)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::lattice::{self, product_within, Ideal, LatticeReport};
use crate::ring::FiniteRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `IJ ⊆ Nil(R)`.
    NilProduct,
    /// `IJ = (0)`.
    ZeroProduct,
}

#[derive(Debug, Clone)]
pub struct NilGraph {
    pub rule: Rule,
    /// Lattice index of each vertex.
    pub vertices: Vec<usize>,
    pub graph: Graph,
    /// `I ⊆ Nil(R)`.
    pub in_nil: Vec<bool>,
    /// Positions `k` of the primitive idempotents `e_k` lying in `I`.
    pub delta: Option<Vec<Vec<usize>>>,
    /// A non-trivial `J` with `IJ` inside the target, as a lattice index.
    pub witness: Vec<Option<usize>>,
}

impl NilGraph {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn ideal<'a>(&self, lattice: &'a LatticeReport, v: usize) -> &'a Ideal {
        &lattice.ideals[self.vertices[v]]
    }

    pub fn position(&self, lattice_index: usize) -> Option<usize> {
        self.vertices.iter().position(|&i| i == lattice_index)
    }
}

fn target(lattice: &LatticeReport, rule: Rule) -> &Ideal {
    match rule {
        Rule::NilProduct => lattice.nilradical_ideal(),
        Rule::ZeroProduct => &lattice.ideals[lattice.zero],
    }
}

/// Upper triangle (including the diagonal) of the product relation among
/// `ids`, computed row by row.
fn relation(
    ring: &FiniteRing,
    lattice: &LatticeReport,
    ids: &[usize],
    target: &Ideal,
    exec: Exec,
) -> Vec<Vec<bool>> {
    let rows = exec::map_range(exec, ids.len(), |i| {
        let a = &lattice.ideals[ids[i]];
        (i..ids.len())
            .map(|j| product_within(ring, a, &lattice.ideals[ids[j]], target))
            .collect::<Vec<bool>>()
    });
    let n = ids.len();
    let mut full = vec![vec![false; n]; n];
    for (i, row) in rows.into_iter().enumerate() {
        for (off, r) in row.into_iter().enumerate() {
            full[i][i + off] = r;
            full[i + off][i] = r;
        }
    }
    full
}

fn support(lattice: &LatticeReport, ideal: &Ideal) -> Vec<usize> {
    lattice
        .primitive_idempotents
        .iter()
        .enumerate()
        .filter(|&(_, &e)| ideal.contains(e))
        .map(|(k, _)| k)
        .collect()
}

fn assemble(
    ring: &FiniteRing,
    lattice: &LatticeReport,
    rule: Rule,
    vertices: Vec<usize>,
    rel: &[Vec<bool>],
    row_of: &[usize],
    witness: Vec<Option<usize>>,
) -> NilGraph {
    let n = vertices.len();
    let labels = vertices.iter().map(|&v| lattice.ideals[v].label(ring)).collect();
    let mut graph = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rel[row_of[a]][row_of[b]] {
                graph.add_edge(a, b);
            }
        }
    }
    let nil = lattice.nilradical_ideal();
    NilGraph {
        rule,
        in_nil: vertices.iter().map(|&v| lattice.ideals[v].is_subset(nil)).collect(),
        delta: Some(vertices.iter().map(|&v| support(lattice, &lattice.ideals[v])).collect()),
        graph: graph.with_labels(labels),
        vertices,
        witness,
    }
}

fn build(ring: &FiniteRing, lattice: &LatticeReport, rule: Rule, with_unit: bool, exec: Exec) -> NilGraph {
    let nontrivial: Vec<usize> = lattice.nontrivial().collect();
    let mut ids = nontrivial.clone();
    if with_unit {
        ids.push(lattice.unit);
    }
    let rel = relation(ring, lattice, &ids, target(lattice, rule), exec);
    let mut vertices = Vec::new();
    let mut rows = Vec::new();
    let mut witness = Vec::new();
    for (i, &id) in ids.iter().enumerate() {
        let w = (0..nontrivial.len()).find(|&j| rel[i][j]).map(|j| nontrivial[j]);
        if w.is_some() || id == lattice.unit {
            vertices.push(id);
            rows.push(i);
            witness.push(w);
        }
    }
    assemble(ring, lattice, rule, vertices, &rel, &rows, witness)
}

/// `AG_N(R)`. Fields give the empty graph.
pub fn build_nil_graph(ring: &FiniteRing, lattice: &LatticeReport, exec: Exec) -> NilGraph {
    build(ring, lattice, Rule::NilProduct, false, exec)
}

/// `AG(R)`, the zero-product graph on the same kind of vertex set.
pub fn build_ag_graph(ring: &FiniteRing, lattice: &LatticeReport, exec: Exec) -> NilGraph {
    build(ring, lattice, Rule::ZeroProduct, false, exec)
}

/// `AG_N(R)` with `R` added as a last vertex, adjacent to exactly the
/// vertices inside `Nil(R)`. This is the unit-ideal convention for
/// independence counts.
pub fn build_nil_graph_with_unit(ring: &FiniteRing, lattice: &LatticeReport, exec: Exec) -> NilGraph {
    build(ring, lattice, Rule::NilProduct, true, exec)
}

/// `G_T(R)`: the subgraph of ideals `(e_S)` generated by sums of nonempty sets
/// `S` of primitive idempotents, so that `Δ_(e_S) = S`. `S` ranges over the
/// proper subsets, plus the full set when `include_unit_ideal` is set.
pub fn t_subgraph(
    ring: &FiniteRing,
    lattice: &LatticeReport,
    include_unit_ideal: bool,
    exec: Exec,
) -> Result<NilGraph> {
    let pi = &lattice.primitive_idempotents;
    let k = pi.len();
    if k == 0 || k > 20 {
        return Err(Error::invalid(format!("no usable idempotent decomposition ({k} primitive idempotents)")));
    }
    let total = pi.iter().fold(0u32, |acc, &e| ring.add_idx(acc, e));
    let orthogonal = (0..k).all(|i| (i + 1..k).all(|j| ring.mul_idx(pi[i], pi[j]) == 0));
    if total != ring.one_idx() || !orthogonal {
        return Err(Error::invalid("primitive idempotents do not decompose 1"));
    }
    let full = (1usize << k) - 1;
    let mut ids = Vec::new();
    for mask in 1..=full {
        if mask == full && !include_unit_ideal {
            continue;
        }
        let e = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0u32, |acc, i| ring.add_idx(acc, pi[i]));
        let ideal = lattice::principal_of(ring, e);
        let id = lattice
            .index_of(&ideal)
            .ok_or_else(|| Error::invalid("idempotent ideal missing from the lattice"))?;
        ids.push(id);
    }
    ids.sort_unstable();
    let nontrivial: Vec<usize> = lattice.nontrivial().collect();
    let mut probe = ids.clone();
    probe.extend(nontrivial.iter().copied().filter(|j| !ids.contains(j)));
    let nil = lattice.nilradical_ideal();
    let rel = relation(ring, lattice, &probe, nil, exec);
    let witness = (0..ids.len())
        .map(|i| {
            (0..probe.len())
                .find(|&j| probe[j] != lattice.unit && rel[i][j])
                .map(|j| probe[j])
        })
        .collect();
    let rows: Vec<usize> = (0..ids.len()).collect();
    Ok(assemble(ring, lattice, Rule::NilProduct, ids, &rel, &rows, witness))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub actual: Vec<usize>,
    /// `2^(k - |Δ_I|) - 1` for products of `k` fields.
    pub predicted: Option<Vec<usize>>,
}

impl DegreeProfile {
    pub fn agrees(&self) -> bool {
        self.predicted.as_ref().is_none_or(|p| *p == self.actual)
    }
}

pub fn degree_profile(g: &NilGraph, lattice: &LatticeReport, predict: bool) -> Result<DegreeProfile> {
    let actual = g.graph.degrees();
    if !predict {
        return Ok(DegreeProfile { actual, predicted: None });
    }
    if !lattice.is_reduced || g.rule != Rule::NilProduct {
        return Err(Error::UnsupportedPrediction(
            "degree formula needs the nil-graph of a product of fields".into(),
        ));
    }
    let delta = g
        .delta
        .as_ref()
        .ok_or_else(|| Error::UnsupportedPrediction("no support data".into()))?;
    let k = lattice.primitive_idempotents.len();
    let predicted = delta.iter().map(|d| (1usize << (k - d.len())) - 1).collect();
    Ok(DegreeProfile { actual, predicted: Some(predicted) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{analyze_lattice, LatticeOptions};
    use crate::ring::{direct_product, make_gf, make_zmod};

    fn setup(r: &FiniteRing) -> LatticeReport {
        analyze_lattice(r, &LatticeOptions::default()).unwrap()
    }

    fn fields(ps: &[u32]) -> FiniteRing {
        let fs: Vec<FiniteRing> = ps.iter().map(|&p| make_gf(p, 1).unwrap()).collect();
        direct_product(&fs).unwrap()
    }

    fn labels(g: &NilGraph) -> Vec<String> {
        g.graph.labels().to_vec()
    }

    #[test]
    fn z6_and_z8_are_k2() {
        let z6 = make_zmod(6).unwrap();
        let l = setup(&z6);
        let g = build_nil_graph(&z6, &l, Exec::Sequential);
        assert_eq!(labels(&g), vec!["(3)", "(2)"]);
        assert!(g.graph.is_complete() && g.graph.order() == 2);
        let ag = build_ag_graph(&z6, &l, Exec::Sequential);
        assert_eq!(ag.graph.edges(), g.graph.edges());

        let z8 = make_zmod(8).unwrap();
        let l = setup(&z8);
        let g = build_nil_graph(&z8, &l, Exec::Sequential);
        assert_eq!(labels(&g), vec!["(4)", "(2)"]);
        assert_eq!(g.graph.size(), 1);
        assert!(g.in_nil.iter().all(|&b| b));
    }

    #[test]
    fn z16_annihilating_graph() {
        let z16 = make_zmod(16).unwrap();
        let l = setup(&z16);
        let ag = build_ag_graph(&z16, &l, Exec::Sequential);
        let pos = |s: &str| labels(&ag).iter().position(|x| x == s).unwrap();
        assert!(ag.graph.has_edge(pos("(2)"), pos("(8)")));
        assert!(ag.graph.has_edge(pos("(4)"), pos("(8)")));
        assert!(!ag.graph.has_edge(pos("(2)"), pos("(4)")));
        assert_eq!(ag.graph.edges().len(), 2);
    }

    #[test]
    fn three_fields_support_disjointness() {
        let r = fields(&[2, 3, 5]);
        let l = setup(&r);
        let g = build_nil_graph(&r, &l, Exec::Sequential);
        assert_eq!(g.order(), 6);
        let d = g.delta.as_ref().unwrap();
        for a in 0..6 {
            for b in a + 1..6 {
                let disjoint = d[a].iter().all(|k| !d[b].contains(k));
                assert_eq!(g.graph.has_edge(a, b), disjoint);
            }
        }
    }

    #[test]
    fn t_subgraph_two_fields() {
        let r = fields(&[2, 3]);
        let l = setup(&r);
        let t = t_subgraph(&r, &l, true, Exec::Sequential).unwrap();
        let mut d = t.delta.clone().unwrap();
        d.sort();
        assert_eq!(d, vec![vec![0], vec![0, 1], vec![1]]);
        assert_eq!(t.graph.size(), 1);
        let strict = t_subgraph(&r, &l, false, Exec::Sequential).unwrap();
        assert!(strict.graph.is_complete() && strict.order() == 2);
    }

    #[test]
    fn degree_formula() {
        let r = fields(&[2, 2, 3, 5]);
        let l = setup(&r);
        let g = build_nil_graph(&r, &l, Exec::Sequential);
        let p = degree_profile(&g, &l, true).unwrap();
        assert!(p.agrees());
        let d = g.delta.as_ref().unwrap();
        for (v, s) in d.iter().enumerate() {
            if s.len() == 1 {
                assert_eq!(p.actual[v], 7);
            }
            if s.len() == 3 {
                assert_eq!(p.actual[v], 1);
            }
        }
        let z8 = make_zmod(8).unwrap();
        let l8 = setup(&z8);
        let g8 = build_nil_graph(&z8, &l8, Exec::Sequential);
        assert!(matches!(degree_profile(&g8, &l8, true), Err(Error::UnsupportedPrediction(_))));
    }

    #[test]
    fn fields_give_empty_graphs() {
        let f = make_gf(2, 3).unwrap();
        let l = setup(&f);
        assert_eq!(build_nil_graph(&f, &l, Exec::Sequential).order(), 0);
        let u = build_nil_graph_with_unit(&f, &l, Exec::Sequential);
        assert_eq!(u.order(), 1);
    }

    #[test]
    fn strategies_agree() {
        let r = direct_product(&[make_zmod(4).unwrap(), make_gf(3, 1).unwrap()]).unwrap();
        let l = setup(&r);
        let a = build_nil_graph(&r, &l, Exec::Parallel);
        let b = build_nil_graph(&r, &l, Exec::Sequential);
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.witness, b.witness);
    }
}
