mod common;

use common::census_rings;
use nilgraph::exec::Exec;
use nilgraph::genus::{is_planar, Kuratowski, KuratowskiKind, Planarity, RotationSystem};
use nilgraph::graph::Graph;
use nilgraph::lattice::{analyze_lattice, LatticeOptions};
use nilgraph::nil_graph::build_nil_graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Faces of the embedding, walking dart `u -> v` to `v -> w` where `w`
/// follows `u` in the rotation at `v`.
fn faces(g: &Graph, rs: &RotationSystem) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut count = 0;
    for u in 0..g.order() {
        for &v in g.neighbors(u) {
            if seen.contains(&(u, v)) {
                continue;
            }
            count += 1;
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                let rot = rs.rotation(b);
                let i = rot.iter().position(|&x| x == a).unwrap();
                let next = rot[(i + 1) % rot.len()];
                (a, b) = (b, next);
            }
        }
    }
    count
}

/// Each component with an edge satisfies `n - m + f = 2`.
fn genus_zero(g: &Graph, rs: &RotationSystem) -> bool {
    g.components().iter().filter(|c| c.len() > 1).all(|c| {
        let sub = g.induced(c);
        let local = RotationSystem::new(&sub, rs.restrict(c).rotations().to_vec()).unwrap();
        sub.order() as i64 - sub.size() as i64 + faces(&sub, &local) as i64 == 2
    })
}

fn certificate_ok(g: &Graph, k: &Kuratowski) -> bool {
    let b = &k.branch;
    let model: Vec<(usize, usize)> = match k.kind {
        KuratowskiKind::K5 => (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect(),
        KuratowskiKind::K33 => (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect(),
    };
    if b.len() != if k.kind == KuratowskiKind::K5 { 5 } else { 6 } || k.paths.len() != model.len() {
        return false;
    }
    let mut interior = std::collections::HashSet::new();
    let mut covered = vec![false; model.len()];
    for p in &k.paths {
        if !p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return false;
        }
        for v in &p[1..p.len() - 1] {
            if b.contains(v) || !interior.insert(*v) {
                return false;
            }
        }
        let (x, y) = (p[0], *p.last().unwrap());
        let Some(i) = model.iter().position(|&(i, j)| (b[i], b[j]) == (x, y) || (b[i], b[j]) == (y, x)) else {
            return false;
        };
        covered[i] = true;
    }
    covered.iter().all(|&c| c)
}

fn check(g: &Graph) -> bool {
    let n = g.order();
    match is_planar(g) {
        Planarity::Planar(rs) => {
            assert!(genus_zero(g, &rs), "embedding is not planar");
            assert!(n < 3 || g.size() <= 3 * n - 6, "planar verdict beats the Euler bound");
            true
        }
        Planarity::NonPlanar(k) => {
            assert!(certificate_ok(g, &k), "bad Kuratowski certificate {k:?}");
            false
        }
    }
}

#[test]
fn random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut planar, mut nonplanar) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let p: f64 = rng.gen_range(0.1..0.8);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let verdict = check(&g);
        if verdict {
            planar += 1;
            if let Some(&(u, v)) = g.edges().first() {
                assert!(check(&g.without_edge(u, v)), "deleting an edge broke planarity");
            }
        } else {
            nonplanar += 1;
            let missing = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v));
            if let Some((u, v)) = missing {
                let mut h = g.clone();
                h.add_edge(u, v);
                assert!(!check(&h), "adding an edge restored planarity");
            }
        }
    }
    assert!(planar > 100 && nonplanar > 100, "{planar} planar, {nonplanar} non-planar");
}

#[test]
fn census_graphs() {
    for (spec, r) in census_rings(4096) {
        let l = analyze_lattice(&r, &LatticeOptions::default()).unwrap();
        let g = build_nil_graph(&r, &l, Exec::Parallel).graph;
        let n = g.order();
        let planar = check(&g);
        if n >= 3 && g.size() > 3 * n - 6 {
            assert!(!planar, "{spec}");
        }
    }
}
