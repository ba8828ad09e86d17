//! Finite commutative rings with identity, presented by an additive
//! decomposition `Z_{d_1} x ... x Z_{d_k}` and multiplication structure
//! constants `e_i * e_j`.
//!
//! Elements are addressed by a mixed-radix index whose most significant digit
//! is slot 0, so numeric order of indices is lexicographic order of
//! coefficient vectors.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default bound on ring order for ideal enumeration.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Rings up to this order get the exhaustive `one * x = x` check at construction.
pub const IDENTITY_CHECK_BOUND: usize = 4096;

/// Upper limit on the number of additive generators.
pub const MAX_RANK: usize = 32;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

/// An element tagged with the ring it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingId,
    index: u32,
}

impl RingElement {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }
}

/// How the additive slots map back to the construction, used for display and
/// for recovering the factors of a direct product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    Zmod { modulus: u32 },
    /// `Z_m[x]/(f)`; slot `i` is the coefficient of `x^i`.
    Poly { modulus: u32, degree: usize },
    Product(Vec<Factor>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub offset: usize,
    pub rank: usize,
    pub layout: Layout,
    pub label: String,
}

type Sparse = Vec<(usize, u32)>;

#[derive(Clone)]
pub struct FiniteRing {
    id: RingId,
    label: String,
    orders: Vec<u32>,
    strides: Vec<u32>,
    order: usize,
    consts: Vec<Vec<Sparse>>,
    one: u32,
    layout: Layout,
    decode: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("orders", &self.orders)
            .field("order", &self.order)
            .finish()
    }
}

/// Presentation identity: same label, additive orders and structure constants.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.orders == other.orders
            && self.consts == other.consts
            && self.one == other.one
    }
}

impl FiniteRing {
    /// Builds a ring from dense structure constants `table[i][j]` (the
    /// coefficient vector of `e_i * e_j`) and the coefficient vector of one,
    /// validating every ring axiom that is not automatic from bilinearity.
    pub fn from_structure_constants(
        orders: Vec<u32>,
        table: Vec<Vec<Vec<u32>>>,
        one: Vec<u32>,
        label: impl Into<String>,
        layout: Layout,
    ) -> Result<Self> {
        let k = orders.len();
        if k == 0 || k > MAX_RANK {
            return Err(Error::invalid(format!("rank {k} outside 1..={MAX_RANK}")));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::invalid("every additive order must be at least 2"));
        }
        let mut order: u64 = 1;
        for &d in &orders {
            order = order.saturating_mul(d as u64);
        }
        if order > u32::MAX as u64 {
            return Err(Error::ResourceLimit {
                stage: "ring construction",
                what: "ring order",
                value: order.min(usize::MAX as u64) as usize,
                bound: u32::MAX as usize,
            });
        }
        let order = order as usize;
        if table.len() != k || table.iter().any(|row| row.len() != k) {
            return Err(Error::invalid("structure constant table must be k x k"));
        }
        if one.len() != k {
            return Err(Error::invalid("identity has the wrong number of coefficients"));
        }
        for (l, (&c, &d)) in one.iter().zip(&orders).enumerate() {
            if c >= d {
                return Err(Error::invalid(format!("identity coefficient {l} not reduced")));
            }
        }
        let mut consts = vec![vec![Sparse::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let v = &table[i][j];
                if v.len() != k {
                    return Err(Error::invalid(format!("e{i}*e{j} has wrong length")));
                }
                for l in 0..k {
                    let c = v[l];
                    if c >= orders[l] {
                        return Err(Error::invalid(format!(
                            "coefficient {c} of e{i}*e{j} in slot {l} not reduced mod {}",
                            orders[l]
                        )));
                    }
                    // d_i * e_i = 0 forces d_i * (e_i e_j) = 0
                    if !(orders[i] as u64 * c as u64).is_multiple_of(orders[l] as u64) {
                        return Err(Error::invalid(format!(
                            "e{i}*e{j} incompatible with additive order of e{i}"
                        )));
                    }
                    if c != 0 {
                        consts[i][j].push((l, c));
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..i {
                if table[i][j] != table[j][i] {
                    return Err(Error::invalid(format!("e{i}*e{j} != e{j}*e{i}")));
                }
            }
        }

        let mut strides = vec![1u32; k];
        for l in (0..k.saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * orders[l + 1];
        }
        let mut ring = FiniteRing {
            id: RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed)),
            label: label.into(),
            orders,
            strides,
            order,
            consts,
            one: 0,
            layout,
            decode: None,
        };
        ring.one = ring.encode(&one);
        if order <= 1 << 16 {
            let mut table = vec![0u32; order * k];
            for x in 0..order {
                for l in 0..k {
                    table[x * k + l] = (x as u32 / ring.strides[l]) % ring.orders[l];
                }
            }
            ring.decode = Some(table);
        }

        for i in 0..k {
            let ei = ring.basis(i);
            for j in 0..k {
                let ej = ring.basis(j);
                let eij = ring.mul_idx(ei, ej);
                for l in 0..k {
                    let el = ring.basis(l);
                    if ring.mul_idx(eij, el) != ring.mul_idx(ei, ring.mul_idx(ej, el)) {
                        return Err(Error::invalid(format!(
                            "multiplication not associative on (e{i}, e{j}, e{l})"
                        )));
                    }
                }
            }
            if ring.mul_idx(ring.one, ei) != ei {
                return Err(Error::invalid(format!("one * e{i} != e{i}")));
            }
        }
        if order <= IDENTITY_CHECK_BOUND {
            if let Some(x) = (0..order as u32).find(|&x| ring.mul_idx(ring.one, x) != x) {
                return Err(Error::invalid(format!("one * x != x for x = {}", ring.format_idx(x))));
            }
        }
        Ok(ring)
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn additive_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Factor slot ranges of a direct product; a single span otherwise.
    pub fn factor_spans(&self) -> Vec<(usize, usize)> {
        match &self.layout {
            Layout::Product(fs) => fs.iter().map(|f| (f.offset, f.rank)).collect(),
            _ => vec![(0, self.rank())],
        }
    }

    /// Structure constant `e_i * e_j` as a dense coefficient vector.
    pub fn structure_constant(&self, i: usize, j: usize) -> Vec<u32> {
        let mut v = vec![0; self.rank()];
        for &(l, c) in &self.consts[i][j] {
            v[l] = c;
        }
        v
    }

    // ---- checked element API ----

    pub fn element(&self, coeffs: &[u32]) -> Result<RingElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                self.rank(),
                coeffs.len()
            )));
        }
        for (l, (&c, &d)) in coeffs.iter().zip(&self.orders).enumerate() {
            if c >= d {
                return Err(Error::invalid(format!("coefficient {c} in slot {l} not reduced mod {d}")));
            }
        }
        Ok(self.wrap(self.encode(coeffs)))
    }

    pub fn from_index(&self, index: u32) -> Result<RingElement> {
        if (index as usize) < self.order {
            Ok(self.wrap(index))
        } else {
            Err(Error::invalid(format!("index {index} outside ring of order {}", self.order)))
        }
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(0)
    }

    pub fn one(&self) -> RingElement {
        self.wrap(self.one)
    }

    pub fn coeffs(&self, x: &RingElement) -> Result<Vec<u32>> {
        self.check(x)?;
        Ok(self.digits_vec(x.index))
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.add_idx(x.index, y.index)))
    }

    pub fn neg(&self, x: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        Ok(self.wrap(self.neg_idx(x.index)))
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_idx(x.index, y.index)))
    }

    pub fn pow(&self, x: &RingElement, e: u64) -> Result<RingElement> {
        self.check(x)?;
        Ok(self.wrap(self.pow_idx(x.index, e)))
    }

    pub fn format(&self, x: &RingElement) -> Result<String> {
        self.check(x)?;
        Ok(self.format_idx(x.index))
    }

    fn wrap(&self, index: u32) -> RingElement {
        RingElement { ring: self.id, index }
    }

    fn check(&self, x: &RingElement) -> Result<()> {
        if x.ring != self.id {
            return Err(Error::invalid(format!(
                "element belongs to a different ring than {}",
                self.label
            )));
        }
        Ok(())
    }

    // ---- index-level arithmetic used by the algorithms ----

    pub(crate) fn one_idx(&self) -> u32 {
        self.one
    }

    /// Index of the additive generator `e_i`.
    pub(crate) fn basis(&self, i: usize) -> u32 {
        self.strides[i]
    }

    pub(crate) fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().zip(&self.strides).map(|(&c, &s)| c * s).sum()
    }

    #[inline]
    fn digit(&self, x: u32, l: usize) -> u32 {
        match &self.decode {
            Some(t) => t[x as usize * self.orders.len() + l],
            None => (x / self.strides[l]) % self.orders[l],
        }
    }

    #[inline]
    fn digits(&self, x: u32, out: &mut [u32; MAX_RANK]) {
        let k = self.orders.len();
        match &self.decode {
            Some(t) => out[..k].copy_from_slice(&t[x as usize * k..x as usize * k + k]),
            None => {
                for l in 0..k {
                    out[l] = (x / self.strides[l]) % self.orders[l];
                }
            }
        }
    }

    pub(crate) fn digits_vec(&self, x: u32) -> Vec<u32> {
        (0..self.rank()).map(|l| self.digit(x, l)).collect()
    }

    pub(crate) fn add_idx(&self, x: u32, y: u32) -> u32 {
        let mut s = 0;
        for l in 0..self.orders.len() {
            let d = self.orders[l];
            let mut c = self.digit(x, l) + self.digit(y, l);
            if c >= d {
                c -= d;
            }
            s += c * self.strides[l];
        }
        s
    }

    pub(crate) fn neg_idx(&self, x: u32) -> u32 {
        let mut s = 0;
        for l in 0..self.orders.len() {
            let d = self.orders[l];
            let c = self.digit(x, l);
            s += ((d - c) % d) * self.strides[l];
        }
        s
    }

    pub(crate) fn mul_idx(&self, x: u32, y: u32) -> u32 {
        let k = self.orders.len();
        let mut dx = [0u32; MAX_RANK];
        let mut dy = [0u32; MAX_RANK];
        self.digits(x, &mut dx);
        self.digits(y, &mut dy);
        let mut acc = [0u64; MAX_RANK];
        for i in 0..k {
            if dx[i] == 0 {
                continue;
            }
            for j in 0..k {
                if dy[j] == 0 {
                    continue;
                }
                let xy = dx[i] as u64 * dy[j] as u64;
                for &(l, c) in &self.consts[i][j] {
                    let d = self.orders[l] as u64;
                    acc[l] = (acc[l] + (xy % d) * c as u64) % d;
                }
            }
        }
        (0..k).map(|l| acc[l] as u32 * self.strides[l]).sum()
    }

    pub(crate) fn pow_idx(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    /// Per-factor indices of `x` in a direct product (each factor encoded as
    /// if it were constructed on its own).
    pub fn split_index(&self, x: u32) -> Vec<u32> {
        self.factor_spans()
            .into_iter()
            .map(|(off, rank)| {
                let mut s = 0u32;
                let mut stride = 1u32;
                for l in (off..off + rank).rev() {
                    s += self.digit(x, l) * stride;
                    stride *= self.orders[l];
                }
                s
            })
            .collect()
    }

    pub fn format_idx(&self, x: u32) -> String {
        let digits = self.digits_vec(x);
        match &self.layout {
            Layout::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|f| format_slots(&f.layout, &digits[f.offset..f.offset + f.rank]))
                    .collect();
                format!("({})", parts.join(","))
            }
            other => format_slots(other, &digits),
        }
    }
}

fn format_slots(layout: &Layout, digits: &[u32]) -> String {
    match layout {
        Layout::Poly { .. } => format_poly(digits, "x"),
        _ => digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(":"),
    }
}

/// Formats a coefficient list (constant term first) in descending degree,
/// e.g. `[3, 3]` as `3x+3` and `[1, 0, 1]` as `x^2+1`.
pub fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        terms.push(match (c, deg) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

// ---- constructors ----

/// The ring `Z_n`.
pub fn make_zmod(n: u32) -> Result<FiniteRing> {
    if n < 2 {
        return Err(Error::invalid(format!("Z_n needs n >= 2, got {n}")));
    }
    zmod_labelled(n, format!("Z{n}"))
}

fn zmod_labelled(n: u32, label: String) -> Result<FiniteRing> {
    FiniteRing::from_structure_constants(
        vec![n],
        vec![vec![vec![1 % n]]],
        vec![1],
        label,
        Layout::Zmod { modulus: n },
    )
}

/// `Z_m[x]/(f)` for a monic `f` given constant term first.
pub fn make_poly_quotient(base: &FiniteRing, f: &[u32]) -> Result<FiniteRing> {
    let m = match base.layout() {
        Layout::Zmod { modulus } => *modulus,
        _ => return Err(Error::invalid("polynomial quotients need a Z_m base ring")),
    };
    let mut f: Vec<u32> = f.iter().map(|&c| c % m).collect();
    while f.last() == Some(&0) {
        f.pop();
    }
    if f.len() < 2 {
        return Err(Error::invalid("quotient polynomial must have degree >= 1"));
    }
    if *f.last().unwrap() != 1 {
        return Err(Error::invalid(format!(
            "quotient polynomial {} is not monic over Z{m}",
            format_poly(&f, "x")
        )));
    }
    let label = format!("Z{m}[x]/({})", format_poly(&f, "x"));
    poly_ring(m, &f, label)
}

fn poly_ring(m: u32, f: &[u32], label: String) -> Result<FiniteRing> {
    let t = f.len() - 1;
    // powers[s] = x^s reduced modulo f, for s < 2t - 1
    let mut powers: Vec<Vec<u32>> = Vec::with_capacity(2 * t);
    for s in 0..(2 * t).saturating_sub(1).max(1) {
        if s < t {
            let mut v = vec![0; t];
            v[s] = 1;
            powers.push(v);
        } else {
            let prev = &powers[s - 1];
            let top = prev[t - 1] as u64;
            let mut v = vec![0u32; t];
            for i in 1..t {
                v[i] = prev[i - 1];
            }
            // x^t = -(f_0 + f_1 x + ... + f_{t-1} x^{t-1})
            for i in 0..t {
                let sub = (top * f[i] as u64) % m as u64;
                v[i] = ((v[i] as u64 + m as u64 - sub) % m as u64) as u32;
            }
            powers.push(v);
        }
    }
    let table: Vec<Vec<Vec<u32>>> = (0..t)
        .map(|i| (0..t).map(|j| powers[i + j].clone()).collect())
        .collect();
    let mut one = vec![0; t];
    one[0] = 1 % m;
    FiniteRing::from_structure_constants(
        vec![m; t],
        table,
        one,
        label,
        Layout::Poly { modulus: m, degree: t },
    )
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic `b` over `Z_p` (constant term first).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let sub = (lead * bc as u64) % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree as u32);
    (0..count).map(move |mut n| {
        // constant term is the most significant digit, so iteration order is
        // lexicographic on (f_0, f_1, ..., f_{k-1})
        let mut v = vec![0u32; degree + 1];
        for i in (0..degree).rev() {
            v[i] = (n % p as u64) as u32;
            n /= p as u64;
        }
        v[degree] = 1;
        v
    })
}

/// Irreducibility over `Z_p` by trial division with every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

/// `GF(p^k)` as `Z_p[x]/(f)` with `f` the lexicographically first monic
/// irreducible polynomial of degree `k`.
pub fn make_gf(p: u32, k: u32) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("GF needs a prime characteristic, got {p}")));
    }
    if k == 0 {
        return Err(Error::invalid("GF degree must be at least 1"));
    }
    let q = (p as u64).checked_pow(k).filter(|&q| q <= u32::MAX as u64).ok_or(
        Error::ResourceLimit {
            stage: "ring construction",
            what: "field order",
            value: usize::MAX,
            bound: u32::MAX as usize,
        },
    )?;
    let label = format!("GF({q})");
    if k == 1 {
        return zmod_labelled(p, label);
    }
    let f = monic_polys(p, k as usize)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree");
    poly_ring(p, &f, label)
}

/// Componentwise product. Nested products are flattened so the factor list
/// always holds the leaves.
pub fn direct_product(factors: &[FiniteRing]) -> Result<FiniteRing> {
    if factors.is_empty() {
        return Err(Error::invalid("direct product of an empty factor list"));
    }
    let mut leaves: Vec<(Layout, String, Vec<u32>, Vec<Vec<Vec<u32>>>, Vec<u32>)> = Vec::new();
    for r in factors {
        let k = r.rank();
        let one = r.digits_vec(r.one);
        let table: Vec<Vec<Vec<u32>>> =
            (0..k).map(|i| (0..k).map(|j| r.structure_constant(i, j)).collect()).collect();
        match &r.layout {
            Layout::Product(fs) => {
                for f in fs {
                    let sl = f.offset..f.offset + f.rank;
                    let sub: Vec<Vec<Vec<u32>>> = sl
                        .clone()
                        .map(|i| sl.clone().map(|j| table[i][j][sl.clone()].to_vec()).collect())
                        .collect();
                    leaves.push((
                        f.layout.clone(),
                        f.label.clone(),
                        r.orders[sl.clone()].to_vec(),
                        sub,
                        one[sl.clone()].to_vec(),
                    ));
                }
            }
            layout => leaves.push((layout.clone(), r.label.clone(), r.orders.clone(), table, one)),
        }
    }
    let k: usize = leaves.iter().map(|l| l.2.len()).sum();
    let mut orders = Vec::with_capacity(k);
    let mut one = Vec::with_capacity(k);
    let mut table = vec![vec![vec![0u32; k]; k]; k];
    let mut fs = Vec::new();
    let mut offset = 0;
    for (layout, label, ords, sub, o) in leaves {
        let r = ords.len();
        for i in 0..r {
            for j in 0..r {
                for l in 0..r {
                    table[offset + i][offset + j][offset + l] = sub[i][j][l];
                }
            }
        }
        orders.extend(ords);
        one.extend(o);
        fs.push(Factor { offset, rank: r, layout, label });
        offset += r;
    }
    let label = fs.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("*");
    FiniteRing::from_structure_constants(orders, table, one, label, Layout::Product(fs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &FiniteRing, c: &[u32]) -> RingElement {
        r.element(c).unwrap()
    }

    #[test]
    fn zmod_basics() {
        let z6 = make_zmod(6).unwrap();
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.label(), "Z6");
        let p = z6.mul(&el(&z6, &[2]), &el(&z6, &[3])).unwrap();
        assert_eq!(p, z6.zero());

        let z8 = make_zmod(8).unwrap();
        assert_eq!(z8.mul(&el(&z8, &[2]), &el(&z8, &[4])).unwrap(), z8.zero());
        assert_eq!(z8.pow(&el(&z8, &[2]), 3).unwrap(), z8.zero());
        assert_eq!(z8.neg(&el(&z8, &[3])).unwrap(), el(&z8, &[5]));
    }

    #[test]
    fn zmod_rejects_degenerate() {
        assert!(matches!(make_zmod(1), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_zmod(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn poly_quotients() {
        let z6 = make_zmod(6).unwrap();
        let r = make_poly_quotient(&z6, &[0, 0, 1]).unwrap();
        assert_eq!(r.order(), 36);
        assert_eq!(r.label(), "Z6[x]/(x^2)");

        let z4 = make_zmod(4).unwrap();
        let r = make_poly_quotient(&z4, &[0, 0, 0, 1]).unwrap();
        assert_eq!(r.order(), 64);
        let x = el(&r, &[0, 1, 0]);
        let x2 = el(&r, &[0, 0, 1]);
        assert_eq!(r.mul(&x, &x).unwrap(), x2);
        assert_eq!(r.mul(&x, &x2).unwrap(), r.zero());
        assert_eq!(r.format(&el(&r, &[2, 2, 1])).unwrap(), "x^2+2x+2");
    }

    #[test]
    fn poly_quotient_rejects_non_monic() {
        let z6 = make_zmod(6).unwrap();
        assert!(matches!(make_poly_quotient(&z6, &[1, 2]), Err(Error::InvalidParameter(_))));
        // 6x^2 + x vanishes to x, which is monic of degree 1
        assert!(make_poly_quotient(&z6, &[0, 1, 6]).is_ok());
        assert!(make_poly_quotient(&z6, &[3]).is_err());
        let f = make_gf(3, 2).unwrap();
        assert!(make_poly_quotient(&f, &[0, 1]).is_err());
    }

    #[test]
    fn gf4_as_quotient_is_a_field() {
        let z2 = make_zmod(2).unwrap();
        let r = make_poly_quotient(&z2, &[1, 1, 1]).unwrap();
        let one = r.one_idx();
        for x in 1..r.order() as u32 {
            assert!((0..r.order() as u32).any(|y| r.mul_idx(x, y) == one), "{x} not invertible");
        }
    }

    #[test]
    fn gf_construction() {
        let f2 = make_gf(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.label(), "GF(2)");
        let f9 = make_gf(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        // x^2 + 1 is the first irreducible quadratic over Z3 in (f0, f1) order
        assert_eq!(f9.structure_constant(1, 1), vec![2, 0]);
        for x in 1..9 {
            let mut p = x;
            for _ in 0..9 {
                p = f9.mul_idx(p, x);
            }
            assert_ne!(p, 0);
        }
        assert!(matches!(make_gf(4, 1), Err(Error::InvalidParameter(_))));
        assert!(make_gf(3, 0).is_err());
    }

    #[test]
    fn gf_unit_counts() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 2), (2, 5), (7, 3), (2, 9), (3, 5)] {
            let f = make_gf(p, k).unwrap();
            if f.order() > 512 {
                continue;
            }
            let one = f.one_idx();
            let n = f.order() as u32;
            let units = (0..n).filter(|&x| (0..n).any(|y| f.mul_idx(x, y) == one)).count();
            assert_eq!(units, f.order() - 1, "GF({p}^{k})");
        }
    }

    #[test]
    fn products() {
        let z2 = make_zmod(2).unwrap();
        let z3 = make_zmod(3).unwrap();
        let r = direct_product(&[z2.clone(), z3.clone()]).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.label(), "Z2*Z3");
        assert_eq!(r.format(&r.one()).unwrap(), "(1,1)");
        let nested = direct_product(&[r.clone(), make_gf(5, 1).unwrap()]).unwrap();
        assert_eq!(nested.factor_spans().len(), 3);
        assert_eq!(nested.label(), "Z2*Z3*GF(5)");
        assert!(matches!(direct_product(&[]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn mixed_ring_operands_rejected() {
        let a = make_zmod(6).unwrap();
        let b = make_zmod(6).unwrap();
        let x = a.one();
        let y = b.one();
        assert!(matches!(a.add(&x, &y), Err(Error::InvalidParameter(_))));
        assert!(a.mul(&x, &x).is_ok());
    }

    #[test]
    fn rejects_bad_structure_constants() {
        // e*e = 2e in Z4 with one = e is not unital
        let bad = FiniteRing::from_structure_constants(
            vec![4],
            vec![vec![vec![2]]],
            vec![1],
            "bad",
            Layout::Zmod { modulus: 4 },
        );
        assert!(bad.is_err());
        // Z2 x Z3 with e0*e1 = e1 violates the additive orders
        let bad = FiniteRing::from_structure_constants(
            vec![2, 3],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]],
            vec![1, 1],
            "bad",
            Layout::Zmod { modulus: 6 },
        );
        assert!(bad.is_err());
    }

    #[test]
    fn poly_formatting() {
        assert_eq!(format_poly(&[0, 0, 1], "x"), "x^2");
        assert_eq!(format_poly(&[3, 3], "x"), "3x+3");
        assert_eq!(format_poly(&[0], "x"), "0");
        assert_eq!(format_poly(&[1, 1, 1], "x"), "x^2+x+1");
    }
}
