//! Structural theorem checks. Each check evaluates both sides of its
//! statement from independently computed quantities (graph shape, lattice
//! data, independence numbers, genus verdicts) and compares them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::genus::find_biclique_containing;
use crate::lattice::{principal_ideal, LatticeReport};
use crate::nil_graph::NilGraph;
use crate::ring::FiniteRing;

use super::parse::{parse_poly, RingExpr, RingSpec};
use super::RingReport;

pub const THEOREM_IDS: [&str; 14] = [
    "complete-graph",
    "nil-universal",
    "regular-complete",
    "bipartite",
    "tree-star",
    "bipartite-order",
    "idempotent-alpha",
    "alpha-lower-bound",
    "reduced-alpha",
    "min-primes-log-alpha",
    "reduction-genus",
    "genus-below-two",
    "planar",
    "biclique-examples",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub id: String,
    pub status: Status,
    /// Computed left side of the statement.
    pub lhs: Option<String>,
    /// Computed right side of the statement.
    pub rhs: Option<String>,
    /// Why the check does not apply.
    pub reason: Option<String>,
    /// Present exactly when `status` is `Fail`.
    pub counterexample: Option<String>,
}

pub(super) struct Facts<'a> {
    pub spec: &'a RingSpec,
    pub ring: &'a FiniteRing,
    pub lattice: &'a LatticeReport,
    pub g: &'a NilGraph,
    pub report: &'a RingReport,
}

fn not_applicable(id: &str, reason: impl Into<String>) -> TheoremVerdict {
    TheoremVerdict {
        id: id.to_string(),
        status: Status::NotApplicable,
        lhs: None,
        rhs: None,
        reason: Some(reason.into()),
        counterexample: None,
    }
}

fn judge(id: &str, lhs: String, rhs: String, ok: bool, cx: impl FnOnce() -> String) -> TheoremVerdict {
    TheoremVerdict {
        id: id.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        lhs: Some(lhs),
        rhs: Some(rhs),
        reason: None,
        counterexample: (!ok).then(cx),
    }
}

pub(super) fn evaluate(f: &Facts) -> Vec<TheoremVerdict> {
    if f.lattice.is_field() {
        return THEOREM_IDS.iter().map(|id| not_applicable(id, "R is a field")).collect();
    }
    vec![
        complete_graph(f),
        nil_universal(f),
        regular_complete(f),
        bipartite(f),
        tree_star(f),
        bipartite_order(f),
        idempotent_alpha(f),
        alpha_lower_bound(f),
        reduced_alpha(f),
        min_primes_log_alpha(f),
        reduction_genus(f),
        genus_below_two(f),
        planar(f),
        biclique_examples(f),
    ]
}

fn label<'a>(f: &Facts<'a>, v: usize) -> &'a str {
    &f.report.graph.vertices[v]
}

fn non_adjacent_pair(f: &Facts) -> Option<(usize, usize)> {
    let g = &f.g.graph;
    let n = g.order();
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v))
}

fn missing_edge(f: &Facts) -> String {
    match non_adjacent_pair(f) {
        Some((u, v)) => format!("{} and {} are not adjacent", label(f, u), label(f, v)),
        None => "graph is complete".into(),
    }
}

fn complete_graph(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    let lhs = r.graph.complete;
    let rhs = r.is_local || (r.is_reduced && r.max_ideals == 2);
    judge(
        "complete-graph",
        format!("complete = {lhs}"),
        format!("local = {}, reduced = {}, |Max| = {} -> {rhs}", r.is_local, r.is_reduced, r.max_ideals),
        lhs == rhs,
        || {
            if lhs {
                format!("graph is complete on {} vertices but R is neither local nor two fields", r.graph.order)
            } else {
                missing_edge(f)
            }
        },
    )
}

fn nil_universal(f: &Facts) -> TheoremVerdict {
    let g = &f.g.graph;
    let n = g.order();
    let inside: Vec<usize> = (0..n).filter(|&v| f.g.in_nil[v]).collect();
    let bad = inside.iter().copied().find(|&v| g.degree(v) + 1 != n);
    judge(
        "nil-universal",
        format!("{} vertices inside Nil(R)", inside.len()),
        format!("each of degree {}", n.saturating_sub(1)),
        bad.is_none(),
        || {
            let v = bad.unwrap();
            format!("{} lies in Nil(R) but has degree {} of {}", label(f, v), g.degree(v), n - 1)
        },
    )
}

fn regular_complete(f: &Facts) -> TheoremVerdict {
    let r = &f.report.graph;
    judge(
        "regular-complete",
        format!("regular = {}", r.regular.map_or("no".into(), |d| format!("{d}-regular"))),
        format!("complete = {}", r.complete),
        r.regular.is_none() || r.complete,
        || format!("graph is {}-regular but {}", r.regular.unwrap(), missing_edge(f)),
    )
}

fn bipartite(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    let gr = &r.graph;
    let unique_min = f.lattice.minimal_primes == [f.lattice.nilradical];
    let reduced_ok = r.is_reduced || (gr.star && unique_min);
    let rhs = gr.complete_bipartite.is_some() && reduced_ok;
    judge(
        "bipartite",
        format!("bipartite = {}", gr.bipartite),
        format!(
            "complete bipartite = {}, reduced = {}, star = {}, Nil(R) unique minimal prime = {unique_min}",
            gr.complete_bipartite.is_some(),
            r.is_reduced,
            gr.star
        ),
        !gr.bipartite || rhs,
        || {
            if gr.complete_bipartite.is_none() {
                format!("bipartite but not complete bipartite: {}", missing_cross_edge(f))
            } else if !gr.star {
                "R is not reduced and the complete bipartite graph is not a star".into()
            } else {
                format!("R is not reduced and has {} minimal primes", r.min_primes)
            }
        },
    )
}

fn missing_cross_edge(f: &Facts) -> String {
    let g = &f.g.graph;
    let Some(side) = g.bipartition() else { return "no bipartition".into() };
    let n = g.order();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && !g.has_edge(u, v) {
                return format!("{} and {} lie on opposite sides but are not adjacent", label(f, u), label(f, v));
            }
        }
    }
    "graph is disconnected".into()
}

fn tree_star(f: &Facts) -> TheoremVerdict {
    let r = &f.report.graph;
    judge(
        "tree-star",
        format!("tree = {}", r.tree),
        format!("star = {}", r.star),
        !r.tree || r.star,
        || format!("tree on {} vertices with degree histogram {:?}", r.order, r.degree_histogram),
    )
}

fn bipartite_order(f: &Facts) -> TheoremVerdict {
    let r = &f.report.graph;
    let rhs = r.complete && (1..=2).contains(&r.order);
    judge(
        "bipartite-order",
        format!("bipartite = {}", r.bipartite),
        format!("K_1 or K_2 = {rhs}"),
        r.bipartite == rhs,
        || {
            if r.bipartite {
                format!("bipartite graph with {} vertices and {} edges", r.order, r.size)
            } else {
                "K_1 or K_2 reported as non-bipartite".into()
            }
        },
    )
}

fn pow2(e: usize) -> usize {
    1usize << e
}

fn idempotent_alpha(f: &Facts) -> TheoremVerdict {
    let a = &f.report.independence;
    let n = f.report.max_ideals;
    let want = pow2(n - 1);
    judge(
        "idempotent-alpha",
        format!("alpha(G_T) = {} (strict), {} (with R)", a.t_strict, a.t_unit),
        format!("2^(n-1) = {want} with R, {} strict, n = {n}", want - 1),
        a.t_unit == want && a.t_strict + 1 == want,
        || format!("alpha(G_T) = {}/{} against {}/{want}", a.t_strict, a.t_unit, want - 1),
    )
}

fn alpha_lower_bound(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    let a = r.independence.unit;
    let want = pow2(r.max_ideals - 1);
    let ok = a >= want && ((a == want) == r.is_reduced);
    judge(
        "alpha-lower-bound",
        format!("alpha = {a} (with R), {} (strict); reduced = {}", r.independence.strict, r.is_reduced),
        format!("2^(n-1) = {want}, n = {}", r.max_ideals),
        ok,
        || {
            if a < want {
                format!("alpha = {a} < {want}")
            } else if r.is_reduced {
                format!("R is reduced but alpha = {a} > {want}")
            } else {
                format!("R is not reduced but alpha = {a} = 2^(n-1)")
            }
        },
    )
}

fn reduced_alpha(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    if !r.is_reduced {
        return not_applicable("reduced-alpha", "R is not reduced");
    }
    let a = &r.independence;
    let want = pow2(r.min_primes - 1);
    judge(
        "reduced-alpha",
        format!("alpha = {} (with R), {} (strict)", a.unit, a.strict),
        format!("2^(|Min|-1) = {want}, |Min| = {}", r.min_primes),
        a.unit == want && a.strict + 1 == want,
        || format!("alpha = {}/{} against {}/{want}", a.strict, a.unit, want - 1),
    )
}

fn min_primes_log_alpha(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    if !r.is_reduced {
        return not_applicable("min-primes-log-alpha", "R is not reduced");
    }
    let a = r.independence.unit;
    let log = a.is_power_of_two().then(|| a.trailing_zeros() as usize);
    judge(
        "min-primes-log-alpha",
        format!("|Min| = {}", r.min_primes),
        format!("log2(alpha) = {}", log.map_or(format!("log2({a}) not an integer"), |l| l.to_string())),
        log == Some(r.min_primes),
        || format!("|Min| = {} but alpha = {a}", r.min_primes),
    )
}

fn reduction_genus(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    judge(
        "reduction-genus",
        format!("genus = {}", r.genus.verdict),
        format!("genus of reduction = {}", r.reduced_genus),
        r.genus.verdict.compatible(&r.reduced_genus),
        || format!("{} and {} share no value", r.genus.verdict, r.reduced_genus),
    )
}

struct Factors {
    count: usize,
    fields: usize,
    largest: usize,
}

fn factors(r: &RingReport) -> Factors {
    let nt: Vec<usize> = r.local_factor_ideals.iter().map(|c| c - 2).collect();
    Factors {
        count: nt.len(),
        fields: nt.iter().filter(|&&t| t == 0).count(),
        largest: nt.iter().copied().max().unwrap_or(0),
    }
}

/// The ring shape that forces genus at most one, if any.
fn genus_below_two_case(r: &RingReport) -> Option<&'static str> {
    let Factors { count, fields, largest } = factors(r);
    let nt: Vec<usize> = r.local_factor_ideals.iter().map(|c| c - 2).collect();
    match count {
        1 if largest <= 7 => Some("local with at most 7 non-trivial ideals"),
        2 if fields >= 1 && largest <= 3 => Some("field times a local ring with at most 3 non-trivial ideals"),
        2 if nt.iter().all(|&t| t <= 1) => Some("two local rings with at most 1 non-trivial ideal each"),
        3 if fields >= 2 && largest <= 2 => Some("two fields times a local ring with at most 2 non-trivial ideals"),
        4 if fields == 4 => Some("four fields"),
        _ => None,
    }
}

fn planar_case(r: &RingReport) -> Option<&'static str> {
    let Factors { count, fields, largest } = factors(r);
    match count {
        1 if largest <= 4 => Some("local with at most 4 non-trivial ideals"),
        2 if fields >= 1 && largest <= 1 => Some("field times a local ring with at most 1 non-trivial ideal"),
        3 if fields == 3 => Some("three fields"),
        _ => None,
    }
}

fn shape(r: &RingReport) -> String {
    let nt: Vec<usize> = r.local_factor_ideals.iter().map(|c| c - 2).collect();
    format!("|Max| = {}, non-trivial ideals per local factor {nt:?}", r.max_ideals)
}

fn genus_below_two(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    let Some(lhs) = r.genus.verdict.below(2) else {
        return not_applicable("genus-below-two", format!("genus verdict {} straddles 2", r.genus.verdict));
    };
    let case = genus_below_two_case(r);
    judge(
        "genus-below-two",
        format!("genus = {} -> below 2 = {lhs}", r.genus.verdict),
        format!("{}: {}", shape(r), case.unwrap_or("no listed case")),
        lhs == case.is_some(),
        || match case {
            Some(c) => format!("R is {c} but genus = {}", r.genus.verdict),
            None => format!("genus = {} but R matches no listed case ({})", r.genus.verdict, shape(r)),
        },
    )
}

fn planar(f: &Facts) -> TheoremVerdict {
    let r = f.report;
    let lhs = r.genus.verdict.exact() == Some(0);
    let case = planar_case(r);
    judge(
        "planar",
        format!("planar = {lhs}"),
        format!("{}: {}", shape(r), case.unwrap_or("no listed case")),
        lhs == case.is_some(),
        || match case {
            Some(c) => format!("R is {c} but genus = {}", r.genus.verdict),
            None => format!("graph is planar but R matches no listed case ({})", shape(r)),
        },
    )
}

/// Generator lists `(I, J)` attached to the presentations `Z6[x]/(x^m)`,
/// `m >= 2`, and `Z4[x]/(x^3)`.
fn example_generators(expr: &RingExpr) -> Option<(u32, [&'static str; 3], [&'static str; 7])> {
    let RingExpr::Quotient { modulus, poly } = expr else { return None };
    let monomial = poly.len() >= 3 && poly[..poly.len() - 1].iter().all(|&c| c == 0);
    match (*modulus, poly.len() - 1) {
        (6, _) if monomial => Some((6, ["3", "3x", "3x+3"], ["2", "4", "2x", "4x", "2x+2", "4x+2", "2x+4"])),
        (4, 3) if monomial => Some((
            4,
            ["2x", "2x^2", "2x+2x^2"],
            ["2", "2+x^2", "2+2x^2", "2-x^2", "2+2x", "2+2x+x^2", "2+2x+2x^2"],
        )),
        _ => None,
    }
}

fn biclique_examples(f: &Facts) -> TheoremVerdict {
    const ID: &str = "biclique-examples";
    let Some((m, is, js)) = example_generators(&f.spec.expr) else {
        return not_applicable(ID, "no listed generators for this presentation");
    };
    let vertex = |text: &str| -> Result<usize, String> {
        let mut c = parse_poly(text, m).map_err(|e| e.to_string())?;
        c.resize(f.ring.rank().max(c.len()), 0);
        let x = f.ring.element(&c).map_err(|e| e.to_string())?;
        let ideal = principal_ideal(f.ring, &x).map_err(|e| e.to_string())?;
        f.lattice
            .index_of(&ideal)
            .and_then(|i| f.g.position(i))
            .ok_or_else(|| format!("({text}) is not a vertex"))
    };
    let mut ids = Vec::new();
    for t in is.iter().chain(&js) {
        match vertex(t) {
            Ok(v) => ids.push(v),
            Err(e) => return judge(ID, "listed generators".into(), "vertices".into(), false, || e),
        }
    }
    let mut groups: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (t, &v) in is.iter().chain(&js).zip(&ids) {
        groups.entry(v).or_default().push(t);
    }
    let (left, right) = ids.split_at(3);
    let g = &f.g.graph;
    let adjacent = left.iter().all(|&u| right.iter().all(|&v| g.has_edge(u, v)));
    let distinct = groups.len() == ids.len();
    let biclique = distinct.then(|| find_biclique_containing(g, 3, 7, left, right)).flatten();
    let verdict = f.report.genus.verdict;
    judge(
        ID,
        format!(
            "{} distinct vertices from 10 generators, all I-J pairs adjacent = {adjacent}, K_3,7 found = {}",
            groups.len(),
            biclique.is_some()
        ),
        format!("genus = {verdict}"),
        distinct && adjacent && biclique.is_some() && verdict.lower() >= 2,
        || {
            let merged: Vec<String> = groups
                .values()
                .filter(|ts| ts.len() > 1)
                .map(|ts| ts.iter().map(|t| format!("({t})")).collect::<Vec<_>>().join(" = "))
                .collect();
            if !merged.is_empty() {
                format!("listed ideals coincide: {}", merged.join("; "))
            } else if !adjacent {
                "some listed I and J are not adjacent".into()
            } else if biclique.is_none() {
                "no K_3,7 contains the listed ideals".into()
            } else {
                format!("genus = {verdict} is not at least 2")
            }
        },
    )
}
