//! Simple undirected graphs and the exact invariants needed by the theorem
//! checks.
//!
//! Vacuous conventions: the empty graph is complete, regular, bipartite and
//! complete bipartite with independence number 0; `K_1` is complete, a tree,
//! complete bipartite and a star.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_INDEPENDENCE_BOUND: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], labels: Vec::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    /// Adds `{u, v}`; self-loops and repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        if u == v || self.has_edge(u, v) {
            return;
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> String {
        self.labels.get(v).cloned().unwrap_or_else(|| v.to_string())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for d in self.degrees() {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Subgraph induced on `keep` (in the given order), with labels carried over.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && index[w] > i {
                    g.add_edge(i, index[w]);
                }
            }
        }
        if !self.labels.is_empty() {
            g.labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        }
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|a| a.len() + 1 == self.n)
    }

    /// `Some(r)` if every vertex has degree `r` (`Some(0)` for the empty graph).
    pub fn regularity(&self) -> Option<usize> {
        let r = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == r).then_some(r)
    }

    /// BFS two-colouring; `None` if some component has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// An odd cycle as a closed vertex sequence (first vertex not repeated).
    pub fn find_odd_cycle(&self) -> Option<Vec<usize>> {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        // climb both tree paths to their meeting point
                        let (mut a, mut b) = (v, w);
                        let mut left = vec![a];
                        let mut right = vec![b];
                        while a != b {
                            if depth[a] >= depth[b] {
                                a = parent[a];
                                left.push(a);
                            } else {
                                b = parent[b];
                                right.push(b);
                            }
                        }
                        right.pop();
                        right.reverse();
                        left.extend(right);
                        return Some(left);
                    }
                }
            }
        }
        None
    }

    /// Connected, bipartite and every cross pair adjacent. `K_0` and `K_1`
    /// count vacuously.
    pub fn is_complete_bipartite(&self) -> bool {
        self.complete_bipartite_sides().is_some()
    }

    /// Side sizes `(a, b)` with `a <= b` when the graph is complete bipartite.
    pub fn complete_bipartite_sides(&self) -> Option<(usize, usize)> {
        match self.n {
            0 => return Some((0, 0)),
            1 => return Some((0, 1)),
            _ => {}
        }
        if !self.is_connected() {
            return None;
        }
        let color = self.bipartition()?;
        let a = color.iter().filter(|&&c| c == 0).count();
        let b = self.n - a;
        (self.size() == a * b).then_some((a.min(b), a.max(b)))
    }

    /// Complete bipartite with a side of size one; `K_1` is `K_{1,0}`.
    pub fn is_star(&self) -> bool {
        match self.complete_bipartite_sides() {
            Some((0, 1)) => true,
            Some((1, _)) => true,
            _ => false,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() == self.n - 1 && self.is_connected()
    }

    /// Removes every vertex of degree one, once. Labels follow the survivors.
    pub fn reduction(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) != 1).collect();
        self.induced(&keep)
    }

    /// Surviving vertex indices of [`Graph::reduction`].
    pub fn reduction_survivors(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) != 1).collect()
    }

    /// Repeats [`Graph::reduction`] until no degree-one vertex is left.
    pub fn iterated_reduction(&self) -> Graph {
        let mut g = self.clone();
        loop {
            let next = g.reduction();
            if next.n == g.n {
                return g;
            }
            g = next;
        }
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// A clique of exactly `size` vertices, if one exists.
    pub fn find_clique(&self, size: usize) -> Option<Vec<usize>> {
        fn grow(g: &Graph, size: usize, cur: &mut Vec<usize>, cand: &[usize]) -> bool {
            if cur.len() == size {
                return true;
            }
            for (i, &v) in cand.iter().enumerate() {
                if cur.len() + cand.len() - i < size {
                    return false;
                }
                let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
                cur.push(v);
                if grow(g, size, cur, &next) {
                    return true;
                }
                cur.pop();
            }
            false
        }
        let cand: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) + 1 >= size).collect();
        let mut cur = Vec::new();
        grow(self, size, &mut cur, &cand).then_some(cur)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}

// ---- exact independence number ----

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for v in 0..n {
            b.set(v);
        }
        b
    }
    fn set(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }
    fn clear(&mut self, v: usize) {
        self.0[v >> 6] &= !(1 << (v & 63));
    }
    fn and_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + t
                })
            })
        })
    }
}

struct Mis<'a> {
    nbr: &'a [Bits],
    best: Vec<usize>,
    cur: Vec<usize>,
}

impl Mis<'_> {
    /// Any independent set `S` meets each edge at most once, so the degrees of
    /// `S` sum to at most `m`; `|S|` is bounded by the longest prefix of the
    /// ascending degree sequence whose sum stays within `m`.
    fn degree_sum_bound(degrees: &mut [usize]) -> usize {
        let m: usize = degrees.iter().sum::<usize>() / 2;
        degrees.sort_unstable();
        let mut acc = 0;
        let mut k = 0;
        for &d in degrees.iter() {
            if acc + d > m {
                break;
            }
            acc += d;
            k += 1;
        }
        k
    }

    fn search(&mut self, cand: Bits) {
        let verts: Vec<usize> = cand.iter().collect();
        if verts.is_empty() {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            return;
        }
        let mut degs: Vec<usize> = verts.iter().map(|&v| self.nbr[v].and_count(&cand)).collect();
        let (imax, &dmax) = degs.iter().enumerate().max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i))).unwrap();
        if dmax == 0 {
            let pushed = verts.len();
            self.cur.extend(&verts);
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            self.cur.truncate(self.cur.len() - pushed);
            return;
        }
        let v = verts[imax];
        if self.cur.len() + Self::degree_sum_bound(&mut degs) <= self.best.len() {
            return;
        }
        let mut closed = self.nbr[v].clone();
        closed.set(v);
        self.cur.push(v);
        self.search(cand.minus(&closed));
        self.cur.pop();
        let mut without = cand;
        without.clear(v);
        self.search(without);
    }
}

/// Exact maximum independent set by branch and bound (max-degree branching,
/// greedy lower bound, degree-sum upper bound). Returns the size and a
/// witness set, sorted.
pub fn independence_number(g: &Graph, bound: usize) -> Result<(usize, Vec<usize>)> {
    if g.order() > bound {
        return Err(Error::ResourceLimit {
            stage: "independence number",
            what: "graph order",
            value: g.order(),
            bound,
        });
    }
    let n = g.order();
    let nbr: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::empty(n);
            for &w in g.neighbors(v) {
                b.set(w);
            }
            b
        })
        .collect();
    let mut mis = Mis { nbr: &nbr, best: greedy_independent(g), cur: Vec::new() };
    mis.search(Bits::full(n));
    let mut best = mis.best;
    best.sort_unstable();
    debug_assert!(g.is_independent(&best));
    Ok((best.len(), best))
}

/// Minimum-degree greedy independent set.
pub fn greedy_independent(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut alive = vec![true; n];
    let mut out = Vec::new();
    loop {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| g.neighbors(v).iter().filter(|&&w| alive[w]).count());
        let Some(v) = pick else { break };
        out.push(v);
        alive[v] = false;
        for &w in g.neighbors(v) {
            alive[w] = false;
        }
    }
    out
}
