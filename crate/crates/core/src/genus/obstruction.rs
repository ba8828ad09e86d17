//! Complete bipartite subgraphs (not necessarily induced).

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biclique {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Biclique {
    /// Disjoint sides with every cross pair an edge of `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut all: Vec<usize> = self.left.iter().chain(&self.right).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len() == self.left.len() + self.right.len()
            && all.iter().all(|&v| v < g.order())
            && self.left.iter().all(|&u| self.right.iter().all(|&v| g.has_edge(u, v)))
    }
}

/// A `K_{m,n}` subgraph with `|left| = m`, `|right| = n`.
pub fn find_biclique(g: &Graph, m: usize, n: usize) -> Option<Biclique> {
    find_biclique_containing(g, m, n, &[], &[])
}

/// A `K_{m,n}` subgraph whose left side contains `left_req` and whose right
/// side contains `right_req`. Left sides are grown by backtracking over
/// candidates of degree at least `n`, highest degree first, tracking the
/// common neighbourhood.
pub fn find_biclique_containing(
    g: &Graph,
    m: usize,
    n: usize,
    left_req: &[usize],
    right_req: &[usize],
) -> Option<Biclique> {
    let nv = g.order();
    if left_req.len() > m || right_req.len() > n || m + n > nv {
        return None;
    }
    if left_req.iter().any(|v| right_req.contains(v)) {
        return None;
    }
    let mut common: Vec<bool> = vec![true; nv];
    for &u in left_req {
        for (v, c) in common.iter_mut().enumerate() {
            *c = *c && g.has_edge(u, v);
        }
    }
    let mut cand: Vec<usize> = (0..nv)
        .filter(|&v| g.degree(v) >= n && !left_req.contains(&v) && !right_req.contains(&v))
        .collect();
    cand.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut left = left_req.to_vec();
    if let Some(common) = grow(g, m, n, right_req, &cand, 0, &mut left, common) {
        let right = pick_right(n, right_req, &left, &common);
        let mut left = left;
        left.sort_unstable();
        return Some(Biclique { left, right });
    }
    None
}

fn available(n: usize, right_req: &[usize], left: &[usize], common: &[bool]) -> bool {
    right_req.iter().all(|&v| common[v])
        && (0..common.len()).filter(|&v| common[v] && !left.contains(&v)).count() >= n
}

fn pick_right(n: usize, right_req: &[usize], left: &[usize], common: &[bool]) -> Vec<usize> {
    let mut right = right_req.to_vec();
    for v in 0..common.len() {
        if right.len() == n {
            break;
        }
        if common[v] && !left.contains(&v) && !right.contains(&v) {
            right.push(v);
        }
    }
    right.sort_unstable();
    right
}

#[allow(clippy::too_many_arguments)]
fn grow(
    g: &Graph,
    m: usize,
    n: usize,
    right_req: &[usize],
    cand: &[usize],
    from: usize,
    left: &mut Vec<usize>,
    common: Vec<bool>,
) -> Option<Vec<bool>> {
    if !available(n, right_req, left, &common) {
        return None;
    }
    if left.len() == m {
        return Some(common);
    }
    for i in from..cand.len() {
        if cand.len() - i < m - left.len() {
            return None;
        }
        let v = cand[i];
        let next: Vec<bool> = common.iter().enumerate().map(|(w, &c)| c && g.has_edge(v, w)).collect();
        left.push(v);
        if let Some(found) = grow(g, m, n, right_req, cand, i + 1, left, next) {
            return Some(found);
        }
        left.pop();
    }
    None
}
