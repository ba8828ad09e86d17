mod common;

use common::census_rings;
use nilgraph::census::parse_ring_spec;
use nilgraph::exec::Exec;
use nilgraph::lattice::{analyze_lattice, ideal_product, product_within, LatticeOptions};
use nilgraph::nil_graph::{build_ag_graph, build_nil_graph, degree_profile, t_subgraph};

#[test]
fn zero_product_graph_sits_inside() {
    for (spec, r) in census_rings(1024) {
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let n = build_nil_graph(&r, &l, Exec::Parallel);
        let a = build_ag_graph(&r, &l, Exec::Parallel);
        for (u, v) in a.graph.edges() {
            let (iu, iv) = (a.vertices[u], a.vertices[v]);
            let (pu, pv) = (n.position(iu).unwrap(), n.position(iv).unwrap());
            assert!(n.graph.has_edge(pu, pv), "{spec}");
        }
        if l.is_reduced {
            assert_eq!(a.vertices, n.vertices, "{spec}");
            assert_eq!(a.graph.edges(), n.graph.edges(), "{spec}");
        }
    }
}

#[test]
fn adjacency_and_vertices_match_the_definition() {
    for (spec, r) in census_rings(256) {
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let g = build_nil_graph(&r, &l, Exec::Parallel);
        let nil = l.nilradical_ideal();
        let nontrivial: Vec<usize> = l.nontrivial().collect();
        let expected: Vec<usize> = nontrivial
            .iter()
            .copied()
            .filter(|&i| {
                nontrivial.iter().any(|&j| ideal_product(&r, &l.ideals[i], &l.ideals[j]).is_subset(nil))
            })
            .collect();
        assert_eq!(g.vertices, expected, "{spec}");
        for u in 0..g.order() {
            let w = g.witness[u].expect("witness stored");
            assert!(w != l.zero && w != l.unit);
            assert!(product_within(&r, g.ideal(&l, u), &l.ideals[w], nil), "{spec}");
            assert_eq!(g.in_nil[u], g.ideal(&l, u).is_subset(nil));
            for v in u + 1..g.order() {
                let inside = ideal_product(&r, g.ideal(&l, u), g.ideal(&l, v)).is_subset(nil);
                assert_eq!(g.graph.has_edge(u, v), inside, "{spec}");
            }
        }
    }
}

#[test]
fn nil_vertices_are_universal() {
    for (spec, r) in census_rings(4096) {
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let g = build_nil_graph(&r, &l, Exec::Parallel);
        for v in 0..g.order() {
            if g.in_nil[v] {
                assert_eq!(g.graph.degree(v) + 1, g.order(), "{spec}");
            }
        }
    }
}

/// Forbidding `J = I` in the vertex predicate only matters when `I` is the
/// sole non-trivial ideal.
#[test]
fn self_witness_changes_nothing_beyond_one_ideal() {
    for (spec, r) in census_rings(1024) {
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let g = build_nil_graph(&r, &l, Exec::Parallel);
        let nil = l.nilradical_ideal();
        let nontrivial: Vec<usize> = l.nontrivial().collect();
        let strict: Vec<usize> = nontrivial
            .iter()
            .copied()
            .filter(|&i| {
                nontrivial
                    .iter()
                    .any(|&j| j != i && product_within(&r, &l.ideals[i], &l.ideals[j], nil))
            })
            .collect();
        if nontrivial.len() == 1 {
            assert!(strict.is_empty(), "{spec}");
            assert_eq!(g.order(), 1, "{spec}");
        } else {
            assert_eq!(strict, g.vertices, "{spec}");
        }
    }
}

#[test]
fn field_products_adjacent_iff_supports_disjoint() {
    for text in ["GF(2)*GF(3)", "GF(2)*GF(2)*GF(2)", "Z210", "GF(2)*GF(3)*GF(5)*GF(7)*GF(11)", "GF(4)*GF(3)*GF(5)"] {
        let r = parse_ring_spec(text).unwrap().build(4096).unwrap();
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let g = build_nil_graph(&r, &l, Exec::Parallel);
        let delta = g.delta.as_ref().unwrap();
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                let disjoint = delta[u].iter().all(|k| !delta[v].contains(k));
                assert_eq!(g.graph.has_edge(u, v), disjoint, "{text}");
            }
        }
        let p = degree_profile(&g, &l, true).unwrap();
        assert!(p.agrees(), "{text}");
        let k = l.primitive_idempotents.len();
        assert_eq!(g.order(), (1 << k) - 2, "{text}");
    }
}

#[test]
fn idempotent_subgraph_supports() {
    for (spec, r) in census_rings(4096) {
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let k = l.primitive_idempotents.len();
        let t = t_subgraph(&r, &l, false, Exec::Parallel).unwrap();
        let tu = t_subgraph(&r, &l, true, Exec::Parallel).unwrap();
        assert_eq!(t.order(), (1 << k) - 2, "{spec}");
        assert_eq!(tu.order(), (1 << k) - 1, "{spec}");
        let delta = tu.delta.as_ref().unwrap();
        let mut seen: Vec<Vec<usize>> = delta.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), tu.order(), "{spec}: supports not distinct");
        for u in 0..tu.order() {
            for v in u + 1..tu.order() {
                let disjoint = delta[u].iter().all(|x| !delta[v].contains(x));
                assert_eq!(tu.graph.has_edge(u, v), disjoint, "{spec}");
            }
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    for (spec, r) in census_rings(512) {
        let lp = analyze_lattice(&r, &LatticeOptions { exec: Exec::Parallel, ..Default::default() }).unwrap();
        let ls = analyze_lattice(&r, &LatticeOptions { exec: Exec::Sequential, ..Default::default() }).unwrap();
        assert_eq!(lp.ideals, ls.ideals, "{spec}");
        let gp = build_nil_graph(&r, &lp, Exec::Parallel);
        let gs = build_nil_graph(&r, &ls, Exec::Sequential);
        assert_eq!(gp.graph, gs.graph, "{spec}");
    }
}
