//! Genus bounds: exact planarity, obstruction lower bounds from the closed
//! genus formulas of `K_n` and `K_{m,n}`, and embedding search upper bounds.
//!
//! Disconnected graphs are classified component by component and the genus
//! is taken as the sum.

mod obstruction;
mod planarity;
mod rotation;
mod search;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use obstruction::{find_biclique, find_biclique_containing, Biclique};
pub use planarity::{blocks, is_planar, kuratowski_subdivision, planar_embedding, Kuratowski, KuratowskiKind, Planarity};
pub use rotation::{trace_faces, FaceTrace, RotationSystem};
pub use search::{
    genus_upper_bound, genus_upper_bound_from, Embedding, SearchOptions, DEFAULT_BUDGET_MS, DEFAULT_SEED,
    STEPS_PER_MS,
};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `γ(K_n) = ⌈(n-3)(n-4)/12⌉` for `n >= 3`.
pub fn genus_formula_complete(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::invalid(format!("complete graph genus formula needs n >= 3, got {n}")));
    }
    Ok(((n - 3) * (n - 4)).div_ceil(12))
}

/// `γ(K_{m,n}) = ⌈(m-2)(n-2)/4⌉` for `m, n >= 2`.
pub fn genus_formula_biclique(m: usize, n: usize) -> Result<usize> {
    if m < 2 || n < 2 {
        return Err(Error::invalid(format!("biclique genus formula needs m, n >= 2, got ({m}, {n})")));
    }
    Ok(((m - 2) * (n - 2)).div_ceil(4))
}

/// Bicliques searched for, in order, when a lower bound of 2 is possible.
pub const GENUS_TWO_BICLIQUES: [(usize, usize); 3] = [(3, 7), (4, 5), (4, 6)];
/// Smallest complete graph of genus 2.
pub const GENUS_TWO_CLIQUE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Exactly(usize),
    AtLeast(usize),
    Interval(usize, usize),
}

impl Verdict {
    pub fn lower(&self) -> usize {
        match *self {
            Verdict::Exactly(g) | Verdict::AtLeast(g) | Verdict::Interval(g, _) => g,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match *self {
            Verdict::Exactly(g) => Some(g),
            Verdict::AtLeast(_) => None,
            Verdict::Interval(_, h) => Some(h),
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            Verdict::Exactly(g) => Some(g),
            _ => None,
        }
    }

    fn from_bounds(lo: usize, hi: Option<usize>) -> Verdict {
        match hi {
            Some(h) if h == lo => Verdict::Exactly(lo),
            Some(h) => Verdict::Interval(lo, h),
            None => Verdict::AtLeast(lo),
        }
    }

    /// Sum of the genera of two disjoint graphs.
    pub fn add(self, other: Verdict) -> Verdict {
        let hi = self.upper().zip(other.upper()).map(|(a, b)| a + b);
        Verdict::from_bounds(self.lower() + other.lower(), hi)
    }

    /// Whether some genus value lies in both ranges.
    pub fn compatible(&self, other: &Verdict) -> bool {
        let lo = self.lower().max(other.lower());
        match (self.upper(), other.upper()) {
            (Some(a), Some(b)) => lo <= a.min(b),
            (Some(a), None) => lo <= a,
            (None, Some(b)) => lo <= b,
            (None, None) => true,
        }
    }

    /// Decides `γ < t` when the bounds allow it.
    pub fn below(&self, t: usize) -> Option<bool> {
        if self.upper().is_some_and(|h| h < t) {
            Some(true)
        } else if self.lower() >= t {
            Some(false)
        } else {
            None
        }
    }

    pub fn tag(&self) -> String {
        match *self {
            Verdict::Exactly(g) => format!("exactly_{g}"),
            Verdict::AtLeast(g) => format!("at_least_{g}"),
            Verdict::Interval(a, b) => format!("interval_{a}_{b}"),
        }
    }

    pub fn parse_tag(s: &str) -> Option<Verdict> {
        let num = |t: &str| t.parse::<usize>().ok();
        if let Some(r) = s.strip_prefix("exactly_") {
            return num(r).map(Verdict::Exactly);
        }
        if let Some(r) = s.strip_prefix("at_least_") {
            return num(r).map(Verdict::AtLeast);
        }
        let r = s.strip_prefix("interval_")?;
        let (a, b) = r.split_once('_')?;
        Some(Verdict::Interval(num(a)?, num(b)?))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Verdict::parse_tag(&s).ok_or_else(|| serde::de::Error::custom(format!("bad verdict tag {s:?}")))
    }
}

/// A re-checkable fact about the graph. Vertex ids refer to the classified
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// Rotation system of one component, `rotation[i]` being the cyclic
    /// neighbour order at `vertices[i]`.
    Embedding { vertices: Vec<usize>, rotation: Vec<Vec<usize>>, faces: usize, genus: usize },
    Kuratowski(Kuratowski),
    Biclique { left: Vec<usize>, right: Vec<usize>, genus_bound: usize },
    Clique { vertices: Vec<usize>, genus_bound: usize },
}

impl Evidence {
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Evidence::Embedding { vertices, rotation, faces, genus } => {
                if vertices.iter().any(|&v| v >= g.order()) {
                    return false;
                }
                let sub = g.induced(vertices);
                let mut index = vec![usize::MAX; g.order()];
                for (i, &v) in vertices.iter().enumerate() {
                    index[v] = i;
                }
                let local: Option<Vec<Vec<usize>>> = rotation
                    .iter()
                    .map(|r| r.iter().map(|&w| (index[w] != usize::MAX).then_some(index[w])).collect())
                    .collect();
                let Some(local) = local else { return false };
                RotationSystem::new(&sub, local)
                    .and_then(|rs| trace_faces(&sub, &rs))
                    .is_ok_and(|t| t.faces == *faces && t.genus == *genus)
            }
            Evidence::Kuratowski(k) => k.verify(g),
            Evidence::Biclique { left, right, genus_bound } => {
                Biclique { left: left.clone(), right: right.clone() }.verify(g)
                    && genus_formula_biclique(left.len(), right.len()).ok() == Some(*genus_bound)
            }
            Evidence::Clique { vertices, genus_bound } => {
                let mut s = vertices.clone();
                s.sort_unstable();
                s.dedup();
                s.len() == vertices.len()
                    && s.iter().all(|&v| v < g.order())
                    && s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v)))
                    && genus_formula_complete(s.len()).ok() == Some(*genus_bound)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusClass {
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
}

impl GenusClass {
    pub fn verify(&self, g: &Graph) -> bool {
        self.evidence.iter().all(|e| e.verify(g))
    }
}

/// Planarity first; for non-planar components the Kuratowski subdivision
/// gives `γ >= 1`, a `K_{3,7}`, `K_{4,5}`, `K_{4,6}` or `K_8` gives `γ >= 2`
/// (no search is run then), and otherwise a genus-1 embedding is searched
/// for.
pub fn classify_genus(g: &Graph, opts: &SearchOptions) -> GenusClass {
    let mut verdict = Verdict::Exactly(0);
    let mut evidence = Vec::new();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced(&comp);
        let (v, ev) = classify_connected(&sub, &comp, opts);
        verdict = verdict.add(v);
        evidence.extend(ev);
    }
    GenusClass { verdict, evidence }
}

fn classify_connected(g: &Graph, ids: &[usize], opts: &SearchOptions) -> (Verdict, Vec<Evidence>) {
    let lift = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&v| ids[v]).collect() };
    let k = match is_planar(g) {
        Planarity::Planar(rs) => {
            let faces = trace_faces(g, &rs).expect("connected").faces;
            let ev = Evidence::Embedding { vertices: ids.to_vec(), rotation: rs.lift(ids), faces, genus: 0 };
            return (Verdict::Exactly(0), vec![ev]);
        }
        Planarity::NonPlanar(k) => k,
    };
    let mut evidence = vec![Evidence::Kuratowski(Kuratowski {
        kind: k.kind,
        branch: lift(&k.branch),
        paths: k.paths.iter().map(|p| lift(p)).collect(),
    })];
    for (m, n) in GENUS_TWO_BICLIQUES {
        if let Some(b) = find_biclique(g, m, n) {
            let genus_bound = genus_formula_biclique(m, n).expect("valid sizes");
            evidence.push(Evidence::Biclique { left: lift(&b.left), right: lift(&b.right), genus_bound });
            return (Verdict::AtLeast(genus_bound), evidence);
        }
    }
    if let Some(c) = g.find_clique(GENUS_TWO_CLIQUE) {
        let genus_bound = genus_formula_complete(GENUS_TWO_CLIQUE).expect("valid size");
        evidence.push(Evidence::Clique { vertices: lift(&c), genus_bound });
        return (Verdict::AtLeast(genus_bound), evidence);
    }
    match genus_upper_bound_from(g, 1, opts).expect("connected") {
        Some(e) => {
            assert!(e.genus >= 1, "search below a Kuratowski lower bound");
            evidence.push(Evidence::Embedding {
                vertices: ids.to_vec(),
                rotation: e.rotation.lift(ids),
                faces: e.faces,
                genus: e.genus,
            });
            (Verdict::from_bounds(1, Some(e.genus)), evidence)
        }
        None => {
            // no budget: any rotation system still bounds the genus
            let rs = RotationSystem::sorted(g);
            let t = trace_faces(g, &rs).expect("connected");
            evidence.push(Evidence::Embedding {
                vertices: ids.to_vec(),
                rotation: rs.lift(ids),
                faces: t.faces,
                genus: t.genus,
            });
            (Verdict::from_bounds(1, Some(t.genus.max(1))), evidence)
        }
    }
}
