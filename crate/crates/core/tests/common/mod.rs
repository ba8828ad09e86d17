//! Brute-force oracles shared by the integration tests. They use only the
//! public element arithmetic, never the lattice or graph internals.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use nilgraph::census::{default_census, RingSpec};
use nilgraph::graph::Graph;
use nilgraph::ring::FiniteRing;

pub type Set = BTreeSet<u32>;

pub struct Table {
    pub n: usize,
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
}

impl Table {
    pub fn new(r: &FiniteRing) -> Table {
        let n = r.order();
        let el: Vec<_> = (0..n as u32).map(|i| r.from_index(i).unwrap()).collect();
        let op = |f: &dyn Fn(usize, usize) -> u32| -> Vec<Vec<u32>> {
            (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
        };
        Table {
            n,
            add: op(&|i, j| r.add(&el[i], &el[j]).unwrap().index()),
            mul: op(&|i, j| r.mul(&el[i], &el[j]).unwrap().index()),
        }
    }

    fn members(&self, s: u128) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| s >> i & 1 == 1)
    }

    /// `h + <x>` for a subgroup `h`.
    fn extend(&self, h: u128, x: u32) -> u128 {
        let mut out = h;
        let mut m = x as usize;
        while m != 0 {
            for a in self.members(h) {
                out |= 1u128 << self.add[a][m];
            }
            m = self.add[m][x as usize] as usize;
        }
        out
    }

    /// Every additive subgroup, grown one generator at a time from `{0}`.
    pub fn subgroups(&self) -> Vec<u128> {
        assert!(self.n <= 128);
        let mut seen: HashSet<u128> = [1u128].into();
        let mut queue = vec![1u128];
        while let Some(h) = queue.pop() {
            for x in 0..self.n as u32 {
                if h >> x & 1 == 0 {
                    let k = self.extend(h, x);
                    if seen.insert(k) {
                        queue.push(k);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_ideal(&self, s: u128) -> bool {
        self.members(s).all(|x| (0..self.n).all(|r| s >> self.mul[r][x] & 1 == 1))
    }

    /// Ideals found by filtering all additive subgroups.
    pub fn ideals(&self) -> BTreeSet<Set> {
        self.subgroups()
            .into_iter()
            .filter(|&s| self.is_ideal(s))
            .map(|s| self.members(s).map(|i| i as u32).collect())
            .collect()
    }

    pub fn nilpotents(&self) -> Set {
        (0..self.n as u32)
            .filter(|&x| {
                let mut p = x;
                for _ in 0..=self.n {
                    if p == 0 {
                        return true;
                    }
                    p = self.mul[p as usize][x as usize];
                }
                false
            })
            .collect()
    }

    pub fn is_prime(&self, p: &Set) -> bool {
        p.len() < self.n
            && (0..self.n).all(|a| {
                p.contains(&(a as u32))
                    || (0..self.n).all(|b| p.contains(&(b as u32)) || !p.contains(&self.mul[a][b]))
            })
    }

    pub fn idempotents(&self) -> Vec<u32> {
        (1..self.n as u32).filter(|&e| self.mul[e as usize][e as usize] == e).collect()
    }
}

/// Maximum independent set size by checking every vertex subset.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 22, "brute force limited to small graphs");
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if (0..n).all(|v| mask >> v & 1 == 0 || adj[v] & mask == 0) {
            best = size;
        }
    }
    best
}

pub fn census_specs() -> Vec<RingSpec> {
    default_census().into_iter().map(|e| e.spec).collect()
}

pub fn census_rings(max_order: usize) -> Vec<(RingSpec, FiniteRing)> {
    census_specs()
        .into_iter()
        .filter_map(|s| {
            let r = s.build(4096).unwrap();
            (r.order() <= max_order).then_some((s, r))
        })
        .collect()
}
