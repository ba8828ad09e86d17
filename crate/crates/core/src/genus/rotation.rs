//! Rotation systems and face tracing.
//!
//! A dart is an oriented edge `u -> v`. Rotations are stored per vertex as
//! cyclic neighbour lists; internally they become a permutation `sigma` on
//! darts (next dart around the same tail), and the face permutation is
//! `phi(d) = sigma(rev(d))`: after `u -> v` comes `v -> w` where `w` follows
//! `u` in the rotation at `v`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Checks that each list is a permutation of the vertex's neighbours.
    pub fn new(g: &Graph, rotations: Vec<Vec<usize>>) -> Result<Self> {
        if rotations.len() != g.order() {
            return Err(Error::invalid(format!(
                "rotation system has {} vertices, graph has {}",
                rotations.len(),
                g.order()
            )));
        }
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(Error::invalid(format!("rotation at vertex {v} is not a permutation of its neighbours")));
            }
        }
        Ok(RotationSystem { rotations })
    }

    /// Neighbours in increasing order at every vertex.
    pub fn sorted(g: &Graph) -> Self {
        RotationSystem { rotations: (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect() }
    }

    pub(crate) fn from_raw(rotations: Vec<Vec<usize>>) -> Self {
        RotationSystem { rotations }
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// The rotation system of the subgraph induced on `keep`, renumbered in
    /// the order of `keep`. Neighbours outside `keep` are dropped.
    pub fn restrict(&self, keep: &[usize]) -> RotationSystem {
        let mut index = vec![usize::MAX; self.rotations.len()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let rotations = keep
            .iter()
            .map(|&v| {
                self.rotations[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        RotationSystem { rotations }
    }

    /// Inverse of [`RotationSystem::restrict`]: relabel local ids to `keep`.
    pub fn lift(&self, keep: &[usize]) -> Vec<Vec<usize>> {
        self.rotations.iter().map(|r| r.iter().map(|&w| keep[w]).collect()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTrace {
    pub faces: usize,
    pub genus: usize,
}

/// Counts the faces of the embedding given by `rs` and solves
/// `n - m + f = 2 - 2g`. The graph must be connected.
pub fn trace_faces(g: &Graph, rs: &RotationSystem) -> Result<FaceTrace> {
    if !g.is_connected() {
        return Err(Error::invalid("face tracing needs a connected graph"));
    }
    let rs = RotationSystem::new(g, rs.rotations.clone())?;
    let darts = Darts::new(g);
    let sigma = darts.sigma_from(&rs);
    let faces = if g.size() == 0 { g.order().min(1) } else { darts.count_faces(&sigma) };
    let genus = euler_genus(g.order(), g.size(), faces)
        .ok_or_else(|| Error::invalid("face count violates Euler parity"))?;
    Ok(FaceTrace { faces, genus })
}

/// `g = (2 - n + m - f) / 2` when that is a non-negative integer.
pub(crate) fn euler_genus(n: usize, m: usize, f: usize) -> Option<usize> {
    if n == 0 {
        return Some(0);
    }
    let twice = 2 + m as i64 - n as i64 - f as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as usize)
}

/// Number of faces needed for genus `g`.
pub(crate) fn faces_for_genus(n: usize, m: usize, g: usize) -> i64 {
    m as i64 - n as i64 + 2 - 2 * g as i64
}

/// Dart bookkeeping for a fixed graph. Darts at `v` occupy
/// `offset[v]..offset[v + 1]` in neighbour order.
#[derive(Debug, Clone)]
pub(crate) struct Darts {
    pub offset: Vec<usize>,
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub rev: Vec<usize>,
}

impl Darts {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut offset = vec![0; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + g.degree(v);
        }
        let total = offset[n];
        let mut tail = vec![0; total];
        let mut head = vec![0; total];
        let mut rev = vec![0; total];
        for v in 0..n {
            for (i, &w) in g.neighbors(v).iter().enumerate() {
                let d = offset[v] + i;
                tail[d] = v;
                head[d] = w;
                let j = g.neighbors(w).binary_search(&v).expect("symmetric adjacency");
                rev[d] = offset[w] + j;
            }
        }
        Darts { offset, tail, head, rev }
    }

    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn at(&self, v: usize) -> std::ops::Range<usize> {
        self.offset[v]..self.offset[v + 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offset[v + 1] - self.offset[v]
    }

    pub fn sigma_from(&self, rs: &RotationSystem) -> Vec<usize> {
        let mut sigma = vec![0; self.len()];
        for (v, rot) in rs.rotations.iter().enumerate() {
            let k = rot.len();
            for i in 0..k {
                let a = self.offset[v] + self.local(v, rot[i]);
                let b = self.offset[v] + self.local(v, rot[(i + 1) % k]);
                sigma[a] = b;
            }
        }
        sigma
    }

    fn local(&self, v: usize, w: usize) -> usize {
        self.at(v).position(|d| self.head[d] == w).expect("neighbour present")
    }

    pub fn rotation_from(&self, sigma: &[usize]) -> RotationSystem {
        let n = self.offset.len() - 1;
        let rotations = (0..n)
            .map(|v| {
                let mut out = Vec::with_capacity(self.degree(v));
                if self.degree(v) > 0 {
                    let start = self.offset[v];
                    let mut d = start;
                    loop {
                        out.push(self.head[d]);
                        d = sigma[d];
                        if d == start {
                            break;
                        }
                    }
                }
                out
            })
            .collect();
        RotationSystem { rotations }
    }

    /// Cycles of `phi = sigma . rev`.
    pub fn count_faces(&self, sigma: &[usize]) -> usize {
        let mut seen = vec![false; self.len()];
        let mut faces = 0;
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = sigma[self.rev[d]];
            }
        }
        faces
    }
}
