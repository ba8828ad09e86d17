//! Exact planarity testing with certificates.
//!
//! Each biconnected block is embedded by the Demoucron-Malgrange-Pertuiset
//! face-insertion algorithm; block rotations are spliced at cut vertices.
//! A non-planar graph is shrunk to an edge-minimal non-planar subgraph, which
//! is a subdivision of `K_5` or `K_{3,3}`, and its branch vertices and paths
//! are read off.

use serde::{Deserialize, Serialize};

use super::rotation::{trace_faces, RotationSystem};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K_5` or `K_{3,3}` inside a graph. For `K_{3,3}` the
/// first three branch vertices form one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub branch: Vec<usize>,
    /// One path per edge of the model graph, from branch vertex to branch vertex.
    pub paths: Vec<Vec<usize>>,
}

impl Kuratowski {
    /// Checks the certificate against `g`: every path runs along edges of
    /// `g`, paths are internally disjoint and avoid the branch vertices, and
    /// their end pairs are exactly the edges of the model graph.
    pub fn verify(&self, g: &Graph) -> bool {
        let b = &self.branch;
        let mut required: Vec<(usize, usize)> = match self.kind {
            KuratowskiKind::K5 if b.len() == 5 => {
                (0..5).flat_map(|i| (i + 1..5).map(move |j| (b[i], b[j]))).collect()
            }
            KuratowskiKind::K33 if b.len() == 6 => {
                (0..3).flat_map(|i| (3..6).map(move |j| (b[i], b[j]))).collect()
            }
            _ => return false,
        };
        let mut sorted_branch = b.clone();
        sorted_branch.sort_unstable();
        sorted_branch.dedup();
        if sorted_branch.len() != b.len() || b.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let mut used = vec![false; g.order()];
        for &v in b {
            used[v] = true;
        }
        let mut ends = Vec::new();
        for p in &self.paths {
            if p.len() < 2 || !p.windows(2).all(|w| w[0] < g.order() && w[1] < g.order() && g.has_edge(w[0], w[1])) {
                return false;
            }
            for &v in &p[1..p.len() - 1] {
                if used[v] {
                    return false;
                }
                used[v] = true;
            }
            let (x, y) = (p[0], p[p.len() - 1]);
            ends.push((x.min(y), x.max(y)));
        }
        for e in required.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        required.sort_unstable();
        ends.sort_unstable();
        ends == required
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar(Kuratowski),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Exact planarity decision with a certificate either way.
pub fn is_planar(g: &Graph) -> Planarity {
    match planar_embedding(g) {
        Some(rs) => Planarity::Planar(rs),
        None => Planarity::NonPlanar(
            kuratowski_subdivision(g).expect("an edge-minimal non-planar graph is a Kuratowski subdivision"),
        ),
    }
}

/// A genus-0 rotation system for every component, or `None`.
pub fn planar_embedding(g: &Graph) -> Option<RotationSystem> {
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for block in blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rot[u].push(v);
            rot[v].push(u);
            continue;
        }
        let (local, ids) = block_graph(&block);
        let emb = embed_biconnected(&local)?;
        for (i, r) in emb.into_iter().enumerate() {
            rot[ids[i]].extend(r.into_iter().map(|w| ids[w]));
        }
    }
    let rs = RotationSystem::from_raw(rot);
    debug_assert!(g.components().iter().all(|c| {
        let sub = g.induced(c);
        trace_faces(&sub, &rs.restrict(c)).map(|t| t.genus == 0).unwrap_or(false)
    }));
    Some(rs)
}

/// Kuratowski subdivision of a non-planar graph, `None` when planar.
pub fn kuratowski_subdivision(g: &Graph) -> Option<Kuratowski> {
    let bad = blocks(g).into_iter().find(|b| {
        b.len() > 1 && {
            let (local, _) = block_graph(b);
            embed_biconnected(&local).is_none()
        }
    })?;
    let (mut h, ids) = block_graph(&bad);
    for (u, v) in h.edges() {
        let t = h.without_edge(u, v);
        if !is_planar_quick(&t) {
            h = t;
        }
    }
    let k = extract(&h)?;
    Some(Kuratowski {
        kind: k.kind,
        branch: k.branch.iter().map(|&v| ids[v]).collect(),
        paths: k.paths.iter().map(|p| p.iter().map(|&v| ids[v]).collect()).collect(),
    })
}

fn is_planar_quick(g: &Graph) -> bool {
    blocks(g).into_iter().all(|b| {
        b.len() == 1 || {
            let (local, _) = block_graph(&b);
            embed_biconnected(&local).is_some()
        }
    })
}

fn extract(h: &Graph) -> Option<Kuratowski> {
    let branch: Vec<usize> = (0..h.order()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = match branch.len() {
        5 if branch.iter().all(|&v| h.degree(v) == 4) => KuratowskiKind::K5,
        6 if branch.iter().all(|&v| h.degree(v) == 3) => KuratowskiKind::K33,
        _ => return None,
    };
    let is_branch = |v: usize| h.degree(v) >= 3;
    let mut paths = Vec::new();
    for &b in &branch {
        for &w in h.neighbors(b) {
            let mut path = vec![b, w];
            let (mut prev, mut cur) = (b, w);
            while !is_branch(cur) {
                let next = *h.neighbors(cur).iter().find(|&&x| x != prev)?;
                path.push(next);
                prev = cur;
                cur = next;
            }
            if b < cur {
                paths.push(path);
            }
        }
    }
    let branch = match kind {
        KuratowskiKind::K5 => branch,
        KuratowskiKind::K33 => {
            let first = branch[0];
            let across: Vec<usize> = paths
                .iter()
                .filter_map(|p| {
                    let (x, y) = (p[0], p[p.len() - 1]);
                    (x == first).then_some(y).or((y == first).then_some(x))
                })
                .collect();
            let mut left: Vec<usize> = branch.iter().copied().filter(|v| !across.contains(v)).collect();
            let mut right = across;
            left.sort_unstable();
            right.sort_unstable();
            left.extend(right);
            left
        }
    };
    Some(Kuratowski { kind, branch, paths })
}

/// Biconnected blocks as edge lists (Tarjan's edge-stack algorithm).
pub fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (vertex, parent, next neighbour index)
        let mut frames = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = frames.len().checked_sub(1) {
            let (v, parent, idx) = frames[top];
            if idx < g.degree(v) {
                let w = g.neighbors(v)[idx];
                frames[top].2 += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_graph(block: &[(usize, usize)]) -> (Graph, Vec<usize>) {
    let mut ids: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |v: usize| ids.binary_search(&v).unwrap();
    let h = Graph::from_edges(ids.len(), block.iter().map(|&(u, v)| (local(u), local(v))));
    (h, ids)
}

enum Fragment {
    Chord(usize, usize),
    Piece { vertices: Vec<usize>, attachments: Vec<usize> },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Piece { attachments, .. } => attachments.clone(),
        }
    }
}

/// Rotation system of a planar embedding of a biconnected graph with at
/// least three vertices, or `None` if it is not planar.
fn embed_biconnected(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.order();
    let m = g.size();
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let cycle = initial_cycle(g);
    let mut in_h = vec![false; n];
    let mut h_edge = vec![vec![false; n]; n];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edge[a][b] = true;
        h_edge[b][a] = true;
    }
    let mut embedded = cycle.len();
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];
    while embedded < m {
        let frags = fragments(g, &in_h, &h_edge);
        let face_sets: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut s = vec![false; n];
                for &v in f {
                    s[v] = true;
                }
                s
            })
            .collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let att = frag.attachments();
            let ok: Vec<usize> = (0..faces.len()).filter(|&f| att.iter().all(|&a| face_sets[f][a])).collect();
            match ok.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, ok[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, ok[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("a fragment exists while edges remain");
        let path = fragment_path(g, &frags[fi]);
        for w in path.windows(2) {
            h_edge[w[0]][w[1]] = true;
            h_edge[w[1]][w[0]] = true;
        }
        for &v in &path {
            in_h[v] = true;
        }
        embedded += path.len() - 1;
        let (f1, f2) = split_face(&faces[face], &path);
        faces[face] = f1;
        faces.push(f2);
    }
    Some(rotation_from_faces(g, &faces))
}

fn initial_cycle(g: &Graph) -> Vec<usize> {
    let x = g.neighbors(0)[0];
    // BFS from x to 0 without the edge x-0
    let mut parent = vec![usize::MAX; g.order()];
    parent[x] = x;
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if (v == x && w == 0) || parent[w] != usize::MAX {
                continue;
            }
            parent[w] = v;
            if w == 0 {
                queue.clear();
                break;
            }
            queue.push_back(w);
        }
    }
    let mut path = vec![0];
    let mut v = parent[0];
    while v != x {
        path.push(v);
        v = parent[v];
    }
    path.push(x);
    path
}

fn fragments(g: &Graph, in_h: &[bool], h_edge: &[Vec<bool>]) -> Vec<Fragment> {
    let n = g.order();
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edge[u][v] {
            out.push(Fragment::Chord(u, v));
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut vertices = vec![s];
        let mut attach = vec![false; n];
        let mut i = 0;
        while i < vertices.len() {
            let v = vertices[i];
            for &w in g.neighbors(v) {
                if in_h[w] {
                    attach[w] = true;
                } else if !seen[w] {
                    seen[w] = true;
                    vertices.push(w);
                }
            }
            i += 1;
        }
        let attachments = (0..n).filter(|&v| attach[v]).collect();
        out.push(Fragment::Piece { vertices, attachments });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(g: &Graph, frag: &Fragment) -> Vec<usize> {
    match frag {
        Fragment::Chord(u, v) => vec![*u, *v],
        Fragment::Piece { vertices, attachments } => {
            let n = g.order();
            let mut inside = vec![false; n];
            for &v in vertices {
                inside[v] = true;
            }
            let a = attachments[0];
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            for &w in g.neighbors(a) {
                if inside[w] {
                    parent[w] = a;
                    queue.push_back(w);
                }
            }
            while let Some(v) = queue.pop_front() {
                if let Some(&b) = g.neighbors(v).iter().find(|&&b| b != a && !inside[b] && attachments.contains(&b)) {
                    let mut path = vec![b, v];
                    let mut x = v;
                    while parent[x] != a {
                        x = parent[x];
                        path.push(x);
                    }
                    path.push(a);
                    path.reverse();
                    return path;
                }
                for &w in g.neighbors(v) {
                    if inside[w] && parent[w] == usize::MAX {
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            unreachable!("fragments of a biconnected graph have two attachments")
        }
    }
}

/// Splits the cyclic face by a path whose ends lie on it; both halves keep
/// the orientation of the original face.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let a = path[0];
    let b = path[path.len() - 1];
    let i = face.iter().position(|&v| v == a).unwrap();
    let j = face.iter().position(|&v| v == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut t = from;
        loop {
            out.push(face[t]);
            if t == to {
                break;
            }
            t = (t + 1) % k;
        }
        out
    };
    // a .. b along the face, then back to a through the path
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    // b .. a along the face, then on to b through the path
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

fn rotation_from_faces(g: &Graph, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let p = f[(i + k - 1) % k];
            let v = f[i];
            let q = f[(i + 1) % k];
            succ[v].push((p, q));
        }
    }
    (0..n)
        .map(|v| {
            let start = g.neighbors(v)[0];
            let mut out = vec![start];
            let mut w = start;
            loop {
                w = succ[v].iter().find(|&&(p, _)| p == w).expect("complete rotation").1;
                if w == start {
                    break;
                }
                out.push(w);
            }
            debug_assert_eq!(out.len(), g.degree(v));
            out
        })
        .collect()
}
