//! Upper bounds on the genus by searching rotation systems.
//!
//! Two stages share one step budget: seeded hill-climbing restarts (a move
//! re-inserts one dart elsewhere in its vertex's rotation and is kept unless
//! the face count drops, with occasional downhill moves), then an exact
//! depth-first construction that fixes rotations while tracing faces dart by
//! dart and prunes with a girth bound on the faces still to close.
//! Budgets are step counts, so results depend only on (graph, seed, budget).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::planarity::planar_embedding;
use super::rotation::{euler_genus, faces_for_genus, Darts, RotationSystem};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;

/// Search steps granted per millisecond of `--budget-ms`.
pub const STEPS_PER_MS: u64 = 1_000;
pub const DEFAULT_BUDGET_MS: u64 = 2_000;
pub const DEFAULT_SEED: u64 = 0x6e69_6c67;
const RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub steps: u64,
    pub seed: u64,
    pub exec: Exec,
}

impl SearchOptions {
    pub fn from_millis(ms: u64, seed: u64, exec: Exec) -> Self {
        SearchOptions { steps: ms.saturating_mul(STEPS_PER_MS), seed, exec }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions::from_millis(DEFAULT_BUDGET_MS, DEFAULT_SEED, Exec::default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub genus: usize,
    pub faces: usize,
    pub rotation: RotationSystem,
}

/// Best embedding found for a connected graph. `None` only when the budget
/// ran out before any rotation system was evaluated.
pub fn genus_upper_bound(g: &Graph, opts: &SearchOptions) -> Result<Option<Embedding>> {
    genus_upper_bound_from(g, 1, opts)
}

/// As [`genus_upper_bound`], stopping early once `floor` is reached (the
/// caller knows the genus is at least `floor` when the graph is non-planar).
pub fn genus_upper_bound_from(g: &Graph, floor: usize, opts: &SearchOptions) -> Result<Option<Embedding>> {
    if !g.is_connected() {
        return Err(Error::invalid("embedding search needs a connected graph"));
    }
    let n = g.order();
    let m = g.size();
    if let Some(rs) = planar_embedding(g) {
        return Ok(Some(Embedding { genus: 0, faces: faces_for_genus(n, m, 0) as usize, rotation: rs }));
    }
    if opts.steps == 0 {
        return Ok(None);
    }
    let darts = Darts::new(g);
    let climb_steps = opts.steps / 4;
    let per = (climb_steps / RESTARTS as u64).max(1);
    let runs = exec::map_range(opts.exec, RESTARTS, |r| climb(&darts, n, m, floor, opts.seed, r as u64, per));
    let (mut best_faces, mut best_sigma) = runs
        .into_iter()
        .enumerate()
        .max_by_key(|(r, (f, _))| (*f, std::cmp::Reverse(*r)))
        .map(|(_, x)| x)
        .expect("at least one restart");
    let mut best_genus = euler_genus(n, m, best_faces).expect("Euler parity");
    let mut left = opts.steps - climb_steps;
    let girth = g.girth().unwrap_or(3);
    let mut target = floor;
    while target < best_genus && left > 0 {
        let share = left / (best_genus - target) as u64;
        let mut dfs = Dfs::new(&darts, girth, faces_for_genus(n, m, target), share.max(1));
        let found = dfs.run();
        left = left.saturating_sub(dfs.used);
        if found {
            best_sigma = dfs.sigma.clone();
            best_faces = darts.count_faces(&best_sigma);
            best_genus = euler_genus(n, m, best_faces).expect("Euler parity");
            break;
        }
        target += 1;
    }
    Ok(Some(Embedding { genus: best_genus, faces: best_faces, rotation: darts.rotation_from(&best_sigma) }))
}

/// One hill-climbing run from a random rotation system.
fn climb(darts: &Darts, n: usize, m: usize, floor: usize, seed: u64, restart: u64, steps: u64) -> (usize, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ restart.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let nv = darts.offset.len() - 1;
    let mut sigma = vec![0; darts.len()];
    for v in 0..nv {
        let mut order: Vec<usize> = darts.at(v).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        for i in 0..order.len() {
            sigma[order[i]] = order[(i + 1) % order.len()];
        }
    }
    let movable: Vec<usize> = (0..nv).filter(|&v| darts.degree(v) >= 3).collect();
    let mut faces = darts.count_faces(&sigma);
    let mut best = (faces, sigma.clone());
    let goal = faces_for_genus(n, m, floor).max(0) as usize;
    if movable.is_empty() {
        return best;
    }
    for step in 0..steps {
        if best.0 >= goal {
            break;
        }
        let v = movable[rng.gen_range(0..movable.len())];
        let at = darts.at(v);
        let d = rng.gen_range(at.clone());
        let t = rng.gen_range(at.clone());
        let pred = at.clone().find(|&x| sigma[x] == d).expect("rotation is a cycle");
        if t == d || t == pred {
            continue;
        }
        // lift d out, splice it in after t
        let saved = (sigma[pred], sigma[d], sigma[t]);
        sigma[pred] = sigma[d];
        sigma[d] = sigma[t];
        sigma[t] = d;
        let f = darts.count_faces(&sigma);
        let temperature = 1.0 - step as f64 / steps as f64;
        let accept = f >= faces || rng.gen_bool((0.3 * temperature).clamp(0.0, 1.0));
        if accept {
            faces = f;
            if f > best.0 {
                best = (f, sigma.clone());
            }
        } else {
            sigma[t] = saved.2;
            sigma[d] = saved.1;
            sigma[pred] = saved.0;
        }
    }
    best
}

const UNSET: usize = usize::MAX;

/// Exhaustive face-by-face construction of a rotation system with at least
/// `target` faces.
struct Dfs<'a> {
    darts: &'a Darts,
    girth: usize,
    target: i64,
    budget: u64,
    used: u64,
    sigma: Vec<usize>,
    pred: Vec<usize>,
    traced: Vec<bool>,
    untraced: usize,
}

impl<'a> Dfs<'a> {
    fn new(darts: &'a Darts, girth: usize, target: i64, budget: u64) -> Self {
        let k = darts.len();
        let mut s = Dfs {
            darts,
            girth,
            target,
            budget,
            used: 0,
            sigma: vec![UNSET; k],
            pred: vec![UNSET; k],
            traced: vec![false; k],
            untraced: k,
        };
        // degree one and two rotations are forced
        for v in 0..darts.offset.len() - 1 {
            let at: Vec<usize> = darts.at(v).collect();
            if at.len() <= 2 {
                for i in 0..at.len() {
                    s.link(at[i], at[(i + 1) % at.len()]);
                }
            }
        }
        s
    }

    fn link(&mut self, a: usize, b: usize) {
        self.sigma[a] = b;
        self.pred[b] = a;
    }

    fn unlink(&mut self, a: usize) {
        let b = self.sigma[a];
        self.pred[b] = UNSET;
        self.sigma[a] = UNSET;
    }

    /// Setting `sigma[a] = b` must not close a cycle shorter than the degree.
    fn can_link(&self, a: usize, b: usize, deg: usize) -> bool {
        if self.pred[b] != UNSET {
            return false;
        }
        let mut len = 1;
        let mut x = b;
        while self.sigma[x] != UNSET {
            x = self.sigma[x];
            len += 1;
            if x == a {
                return len == deg;
            }
        }
        x != a || len == deg
    }

    fn run(&mut self) -> bool {
        self.next_face(0)
    }

    fn next_face(&mut self, closed: i64) -> bool {
        if self.untraced == 0 {
            return closed >= self.target;
        }
        let start = (0..self.darts.len()).find(|&d| !self.traced[d]).expect("untraced dart");
        self.traced[start] = true;
        self.untraced -= 1;
        let ok = self.extend(start, start, 1, closed);
        self.traced[start] = false;
        self.untraced += 1;
        ok
    }

    /// The current face began at `start` and has reached dart `cur`.
    fn extend(&mut self, start: usize, cur: usize, len: usize, closed: i64) -> bool {
        self.used += 1;
        if self.used > self.budget {
            return false;
        }
        let open = self.untraced + len;
        let this = len.max(self.girth);
        let possible = closed + 1 + (open.saturating_sub(this) / self.girth) as i64;
        if possible < self.target {
            return false;
        }
        let r = self.darts.rev[cur];
        if self.sigma[r] != UNSET {
            return self.step(start, self.sigma[r], len, closed);
        }
        let v = self.darts.tail[r];
        let deg = self.darts.degree(v);
        let start_tail = self.darts.tail[start];
        let mut options: Vec<usize> = self.darts.at(v).filter(|&t| t != r && self.can_link(r, t, deg)).collect();
        // close the face now, else aim to close it on the next step
        options.sort_by_key(|&t| {
            if t == start {
                0
            } else if self.darts.head[t] == start_tail {
                1
            } else {
                2
            }
        });
        for t in options {
            self.link(r, t);
            if self.step(start, t, len, closed) {
                return true;
            }
            self.unlink(r);
            if self.used > self.budget {
                return false;
            }
        }
        false
    }

    fn step(&mut self, start: usize, next: usize, len: usize, closed: i64) -> bool {
        if next == start {
            return self.next_face(closed + 1);
        }
        debug_assert!(!self.traced[next]);
        self.traced[next] = true;
        self.untraced -= 1;
        let ok = self.extend(start, next, len + 1, closed);
        self.traced[next] = false;
        self.untraced += 1;
        ok
    }
}
