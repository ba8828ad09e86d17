use nilgraph::census::parse_ring_spec;
use nilgraph::exec::Exec;
use nilgraph::genus::{
    classify_genus, find_biclique, genus_upper_bound, trace_faces, Evidence, GenusClass, SearchOptions, Verdict,
};
use nilgraph::graph::Graph;
use nilgraph::lattice::{analyze_lattice, LatticeOptions};
use nilgraph::nil_graph::build_nil_graph;

fn nil_graph(text: &str) -> Graph {
    let r = parse_ring_spec(text).unwrap().build(4096).unwrap();
    let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
    build_nil_graph(&r, &l, Exec::Parallel).graph
}

fn classify(text: &str) -> (Graph, GenusClass) {
    let g = nil_graph(text);
    let c = classify_genus(&g, &SearchOptions::default());
    assert!(c.verify(&g), "{text}: evidence does not re-verify");
    (g, c)
}

fn has_biclique(c: &GenusClass, m: usize, n: usize) -> bool {
    c.evidence
        .iter()
        .any(|e| matches!(e, Evidence::Biclique { left, right, .. } if left.len() == m && right.len() == n))
}

#[test]
fn four_fields_reduced_graph_is_toroidal() {
    let g = nil_graph("GF(2)*GF(3)*GF(5)*GF(7)");
    assert_eq!((g.order(), g.size()), (14, 25));
    let red = g.reduction();
    assert_eq!((red.order(), red.size()), (10, 21));
    let hist: Vec<(usize, usize)> = red.degree_histogram().into_iter().collect();
    assert_eq!(hist, vec![(3, 6), (6, 4)]);
    let e = genus_upper_bound(&red, &SearchOptions::from_millis(30_000, 1, Exec::Parallel))
        .unwrap()
        .expect("embedding found");
    assert_eq!((e.genus, e.faces), (1, 11));
    let t = trace_faces(&red, &e.rotation).unwrap();
    assert_eq!((t.faces, t.genus), (11, 1));
    assert_eq!(classify_genus(&red, &SearchOptions::default()).verdict, Verdict::Exactly(1));
    assert_eq!(classify_genus(&g, &SearchOptions::default()).verdict, Verdict::Exactly(1));
}

#[test]
fn small_rings() {
    let (g, c) = classify("Z8");
    assert!(g.is_complete() && g.order() == 2);
    assert_eq!(c.verdict, Verdict::Exactly(0));
    assert_eq!(classify("GF(2)*Z4").1.verdict, Verdict::Exactly(0));
    assert_eq!(classify("GF(2)*Z16").1.verdict, Verdict::Exactly(1));
    assert_eq!(classify("GF(2)*Z32").1.verdict, Verdict::AtLeast(2));
}

#[test]
fn chain_rings_give_cliques() {
    let (g, c) = classify("Z2[x]/(x^8)");
    assert!(g.is_complete() && g.order() == 7);
    assert_eq!(c.verdict, Verdict::Exactly(1));
    let (g, c) = classify("Z2[x]/(x^9)");
    assert!(g.is_complete() && g.order() == 8);
    assert_eq!(c.verdict, Verdict::AtLeast(2));
}

#[test]
fn two_local_factors() {
    let (_, c) = classify("Z4*Z8");
    assert_eq!(c.verdict, Verdict::AtLeast(2));
    assert!(has_biclique(&c, 3, 7));
    assert_eq!(classify("Z4*Z4").1.verdict, Verdict::Exactly(1));
    assert_eq!(classify("Z4*Z9").1.verdict, Verdict::Exactly(1));
}

#[test]
fn three_factors() {
    let (_, c) = classify("GF(2)*GF(3)*Z4");
    assert_eq!(c.verdict, Verdict::Exactly(1));
    assert!(c.evidence.iter().any(|e| matches!(e, Evidence::Kuratowski(_))));
    // two fields times Z8 already carries K_{3,7} and K_{4,5}
    let (g, c) = classify("GF(2)*GF(3)*Z8");
    assert_eq!(c.verdict, Verdict::AtLeast(2));
    assert!(has_biclique(&c, 3, 7));
    let b = find_biclique(&g, 4, 5).unwrap();
    assert!(b.verify(&g));
    assert_eq!(classify("GF(2)*GF(3)*GF(5)*Z4").1.verdict, Verdict::AtLeast(2));
}

/// `Z6[x]/(x^2)` has only seven non-trivial ideals and embeds on the torus.
#[test]
fn z6_quotient_is_toroidal() {
    let (g, c) = classify("Z6[x]/(x^2)");
    assert_eq!((g.order(), g.size()), (7, 19));
    assert_eq!(c.verdict, Verdict::Exactly(1));
    assert!(c.evidence.iter().any(|e| matches!(e, Evidence::Embedding { genus: 1, .. })));
    let (_, c) = classify("Z4[x]/(x^3)");
    assert_eq!(c.verdict, Verdict::AtLeast(2));
}

#[test]
fn seed_and_strategy_do_not_change_verdicts() {
    for text in ["Z6[x]/(x^2)", "GF(2)*GF(3)*GF(5)*GF(7)", "Z4*Z4", "GF(2)*Z16"] {
        let g = nil_graph(text);
        let a = classify_genus(&g, &SearchOptions::from_millis(2000, 1, Exec::Parallel));
        let b = classify_genus(&g, &SearchOptions::from_millis(2000, 1, Exec::Sequential));
        assert_eq!(a, b, "{text}");
        let c = classify_genus(&g, &SearchOptions::from_millis(2000, 99, Exec::Parallel));
        assert_eq!(a.verdict, c.verdict, "{text}");
    }
}
