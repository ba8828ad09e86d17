//! Ideal lattice of a finite ring: enumeration, nilradical, prime/maximal/
//! minimal-prime classification, products and primitive idempotents.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::ring::{FiniteRing, RingElement, DEFAULT_MAX_ORDER};

/// An ideal stored by its full element set. Equality and hashing look only at
/// the elements.
#[derive(Debug, Clone)]
pub struct Ideal {
    bits: Vec<u64>,
    elements: Vec<u32>,
    /// Additive (Z-module) generators; their span is exactly the ideal.
    basis: Vec<u32>,
    /// Ideal generators used for display.
    generators: Vec<u32>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

impl Ideal {
    fn from_span(order: usize, span: Span) -> Self {
        let elements = elements_of(&span.bits, order);
        Ideal { bits: span.bits, elements, basis: span.basis, generators: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    /// Sorted element indices (lexicographic in coefficient vectors).
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        bit(&self.bits, x)
    }

    pub fn contains_element(&self, x: &RingElement) -> bool {
        self.contains(x.index())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Generator string such as `(2)` or `(2,x)`.
    pub fn label(&self, ring: &FiniteRing) -> String {
        if self.generators.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.generators.iter().map(|&g| ring.format_idx(g)).collect();
        format!("({})", parts.join(","))
    }

    /// Ordering used for lattices and graph vertices: size, then elements.
    pub fn canonical_cmp(&self, other: &Ideal) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.elements.cmp(&other.elements))
    }
}

fn words(order: usize) -> usize {
    order.div_ceil(64)
}

#[inline]
fn bit(bits: &[u64], x: u32) -> bool {
    bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
}

#[inline]
fn set_bit(bits: &mut [u64], x: u32) {
    bits[(x >> 6) as usize] |= 1 << (x & 63);
}

fn elements_of(bits: &[u64], order: usize) -> Vec<u32> {
    (0..order as u32).filter(|&x| bit(bits, x)).collect()
}

struct Span {
    bits: Vec<u64>,
    basis: Vec<u32>,
}

/// Additive subgroup generated by `gens`, grown one cyclic subgroup at a
/// time: `S <- S + <g>` enumerates the cosets `S + c*g` until `c*g` lands in
/// `S`. Generators already in the span are dropped from the basis.
fn span(ring: &FiniteRing, gens: impl IntoIterator<Item = u32>) -> Span {
    let mut bits = vec![0u64; words(ring.order())];
    set_bit(&mut bits, 0);
    let mut members = vec![0u32];
    let mut basis = Vec::new();
    for g in gens {
        if bit(&bits, g) {
            continue;
        }
        basis.push(g);
        let base_len = members.len();
        let mut shift = g;
        while !bit(&bits, shift) {
            for i in 0..base_len {
                let t = ring.add_idx(members[i], shift);
                set_bit(&mut bits, t);
                members.push(t);
            }
            shift = ring.add_idx(shift, g);
        }
    }
    Span { bits, basis }
}

fn principal_span(ring: &FiniteRing, x: u32) -> Span {
    span(ring, (0..ring.rank()).map(|i| ring.mul_idx(ring.basis(i), x)))
}

/// `(x) = { r x : r in R }`, computed as the additive span of `e_i x`.
pub fn principal_ideal(ring: &FiniteRing, x: &RingElement) -> Result<Ideal> {
    ring.coeffs(x)?;
    Ok(principal_of(ring, x.index()))
}

pub(crate) fn principal_of(ring: &FiniteRing, x: u32) -> Ideal {
    let mut ideal = Ideal::from_span(ring.order(), principal_span(ring, x));
    if !ideal.is_zero() {
        ideal.generators = vec![x];
    }
    ideal
}

pub fn ideal_sum(ring: &FiniteRing, a: &Ideal, b: &Ideal) -> Ideal {
    let mut s = Ideal::from_span(ring.order(), span(ring, a.basis.iter().chain(&b.basis).copied()));
    s.generators = a.generators.iter().chain(&b.generators).copied().collect();
    s
}

/// `IJ`: the additive closure of all products `ab`, which is the additive span
/// of the products of the two additive bases.
pub fn ideal_product(ring: &FiniteRing, a: &Ideal, b: &Ideal) -> Ideal {
    let prods = a.basis.iter().flat_map(|&x| b.basis.iter().map(move |&y| ring.mul_idx(x, y)));
    Ideal::from_span(ring.order(), span(ring, prods))
}

/// `IJ ⊆ T` without materialising `IJ`: `T` is additively closed, so it is
/// enough to test the basis products.
pub fn product_within(ring: &FiniteRing, a: &Ideal, b: &Ideal, target: &Ideal) -> bool {
    a.basis
        .iter()
        .all(|&x| b.basis.iter().all(|&y| target.contains(ring.mul_idx(x, y))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeOptions {
    pub max_order: usize,
    pub exec: Exec,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions { max_order: DEFAULT_MAX_ORDER, exec: Exec::default() }
    }
}

fn check_order(ring: &FiniteRing, max_order: usize) -> Result<()> {
    if ring.order() > max_order {
        return Err(Error::ResourceLimit {
            stage: "ideal enumeration",
            what: "ring order",
            value: ring.order(),
            bound: max_order,
        });
    }
    Ok(())
}

fn gen_key(ring: &FiniteRing, x: u32) -> (usize, u32) {
    (ring.digits_vec(x).iter().filter(|&&c| c != 0).count(), x)
}

/// All ideals, sorted by size then elements. Every ideal of a finite unital
/// ring is a finite sum of principal ideals, so closing the distinct principal
/// ideals under sums with principal ideals reaches the whole lattice.
pub fn enumerate_ideals(ring: &FiniteRing, opts: &LatticeOptions) -> Result<Vec<Ideal>> {
    check_order(ring, opts.max_order)?;
    let n = ring.order();

    let mut principal: Vec<Span> = Vec::new();
    let mut principal_gen: Vec<u32> = Vec::new();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    const CHUNK: usize = 512;
    for start in (0..n).step_by(CHUNK) {
        let end = (start + CHUNK).min(n);
        let spans = exec::map_range(opts.exec, end - start, |i| principal_span(ring, (start + i) as u32));
        for (i, s) in spans.into_iter().enumerate() {
            let x = (start + i) as u32;
            match seen.get(&s.bits) {
                Some(&id) => {
                    if gen_key(ring, x) < gen_key(ring, principal_gen[id]) {
                        principal_gen[id] = x;
                    }
                }
                None => {
                    seen.insert(s.bits.clone(), principal.len());
                    principal.push(s);
                    principal_gen.push(x);
                }
            }
        }
    }

    let mut all: Vec<Span> = principal
        .iter()
        .map(|s| Span { bits: s.bits.clone(), basis: s.basis.clone() })
        .collect();
    let mut i = 0;
    while i < all.len() {
        for p in &principal {
            if p.bits.iter().zip(&all[i].bits).all(|(a, b)| a & !b == 0) {
                continue;
            }
            let s = span(ring, all[i].basis.iter().chain(&p.basis).copied());
            if !seen.contains_key(&s.bits) {
                seen.insert(s.bits.clone(), all.len());
                all.push(s);
            }
        }
        i += 1;
    }

    let mut ideals: Vec<Ideal> = all.into_iter().map(|s| Ideal::from_span(n, s)).collect();
    let principal_ideals: Vec<(usize, u32, &Span)> = principal
        .iter()
        .zip(&principal_gen)
        .map(|(s, &g)| (s.bits.iter().map(|w| w.count_ones() as usize).sum(), g, s))
        .collect();
    for ideal in &mut ideals {
        ideal.generators = display_generators(ring, ideal, &principal_ideals);
    }
    ideals.sort_by(|a, b| a.canonical_cmp(b));
    Ok(ideals)
}

/// Greedy generating set: repeatedly add the largest principal ideal inside
/// `ideal` not yet covered, preferring generators with few nonzero digits.
fn display_generators(ring: &FiniteRing, ideal: &Ideal, principal: &[(usize, u32, &Span)]) -> Vec<u32> {
    let mut cands: Vec<&(usize, u32, &Span)> = principal
        .iter()
        .filter(|(size, _, s)| *size > 1 && s.bits.iter().zip(&ideal.bits).all(|(a, b)| a & !b == 0))
        .collect();
    cands.sort_by_key(|(size, g, _)| (std::cmp::Reverse(*size), gen_key(ring, *g)));
    let mut gens = Vec::new();
    let mut cur = span(ring, std::iter::empty());
    for (_, g, s) in cands {
        if cur.bits == ideal.bits {
            break;
        }
        if s.bits.iter().zip(&cur.bits).all(|(a, b)| a & !b == 0) {
            continue;
        }
        gens.push(*g);
        cur = span(ring, cur.basis.iter().chain(&s.basis).copied());
    }
    gens
}

fn is_nilpotent(ring: &FiniteRing, x: u32) -> bool {
    let mut seen = HashSet::new();
    let mut p = x;
    loop {
        if p == 0 {
            return true;
        }
        if !seen.insert(p) {
            return false;
        }
        p = ring.mul_idx(p, x);
    }
}

/// The set of nilpotent elements, found by iterating powers of every element
/// until they reach 0 or repeat.
pub fn nilradical(ring: &FiniteRing, exec: Exec) -> Ideal {
    let flags = exec::map_range(exec, ring.order(), |x| is_nilpotent(ring, x as u32));
    let nil: Vec<u32> = (0..ring.order() as u32).filter(|&x| flags[x as usize]).collect();
    let s = span(ring, nil.iter().copied());
    let ideal = Ideal::from_span(ring.order(), s);
    debug_assert_eq!(ideal.elements, nil, "nilpotents must form an ideal");
    ideal
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeClassification {
    pub primes: Vec<usize>,
    pub maximal: Vec<usize>,
    pub minimal_primes: Vec<usize>,
}

/// `P` prime iff `P != R` and `ab ∉ P` for all `a, b ∉ P`. Because `P` is an
/// ideal, `ab mod P` depends only on the cosets of `a` and `b`, so the
/// definition is checked on one representative per coset.
pub fn is_prime_ideal(ring: &FiniteRing, p: &Ideal) -> bool {
    let n = ring.order();
    if p.len() == n {
        return false;
    }
    let mut marked = vec![false; n];
    let mut reps = Vec::with_capacity(n / p.len());
    for x in 0..n as u32 {
        if marked[x as usize] {
            continue;
        }
        reps.push(x);
        for &q in &p.elements {
            marked[ring.add_idx(x, q) as usize] = true;
        }
    }
    // reps[0] == 0 is the coset P itself
    let outside = &reps[1..];
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i..] {
            if p.contains(ring.mul_idx(a, b)) {
                return false;
            }
        }
    }
    true
}

pub fn classify_primes(ring: &FiniteRing, ideals: &[Ideal]) -> PrimeClassification {
    let n = ring.order();
    let primes: Vec<usize> = (0..ideals.len()).filter(|&i| is_prime_ideal(ring, &ideals[i])).collect();
    let proper: Vec<usize> = (0..ideals.len()).filter(|&i| ideals[i].len() < n).collect();
    let maximal = proper
        .iter()
        .copied()
        .filter(|&i| {
            !proper
                .iter()
                .any(|&j| j != i && ideals[i].is_subset(&ideals[j]) && ideals[i] != ideals[j])
        })
        .collect();
    let minimal_primes = primes
        .iter()
        .copied()
        .filter(|&i| !primes.iter().any(|&j| j != i && ideals[j].is_subset(&ideals[i])))
        .collect();
    PrimeClassification { primes, maximal, minimal_primes }
}

/// Nonzero idempotents that are minimal under `e <= f  <=>  ef = e`, in
/// descending index order. For an explicit product this is factor order.
pub fn primitive_idempotents(ring: &FiniteRing, exec: Exec) -> Vec<u32> {
    let flags = exec::map_range(exec, ring.order(), |x| {
        x != 0 && ring.mul_idx(x as u32, x as u32) == x as u32
    });
    let idem: Vec<u32> = (0..ring.order() as u32).filter(|&x| flags[x as usize]).collect();
    idem.iter()
        .copied()
        .filter(|&e| !idem.iter().any(|&f| f != e && ring.mul_idx(f, e) == f))
        .rev()
        .collect()
}

#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub ideals: Vec<Ideal>,
    pub zero: usize,
    pub unit: usize,
    pub nilradical: usize,
    pub primes: Vec<usize>,
    pub maximal: Vec<usize>,
    pub minimal_primes: Vec<usize>,
    pub is_reduced: bool,
    pub is_local: bool,
    pub primitive_idempotents: Vec<u32>,
}

impl LatticeReport {
    pub fn nilradical_ideal(&self) -> &Ideal {
        &self.ideals[self.nilradical]
    }

    pub fn index_of(&self, ideal: &Ideal) -> Option<usize> {
        self.ideals
            .binary_search_by(|probe| probe.canonical_cmp(ideal))
            .ok()
    }

    /// Non-trivial ideals: neither `(0)` nor `R`.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ideals.len()).filter(move |&i| i != self.zero && i != self.unit)
    }

    /// A finite ring is a domain exactly when it is a field.
    pub fn is_field(&self) -> bool {
        self.ideals.len() == 2
    }

    /// For each primitive idempotent `e`, the number of ideals of the local
    /// factor `eR` (ideals of `R` contained in `(e)`), including `(0)` and `eR`.
    pub fn local_factor_ideal_counts(&self, ring: &FiniteRing) -> Vec<usize> {
        self.primitive_idempotents
            .iter()
            .map(|&e| {
                let span = principal_span(ring, e);
                self.ideals
                    .iter()
                    .filter(|i| i.bits.iter().zip(&span.bits).all(|(a, b)| a & !b == 0))
                    .count()
            })
            .collect()
    }
}

pub fn analyze_lattice(ring: &FiniteRing, opts: &LatticeOptions) -> Result<LatticeReport> {
    let ideals = enumerate_ideals(ring, opts)?;
    let zero = 0;
    let unit = ideals.len() - 1;
    debug_assert_eq!(ideals[unit].len(), ring.order());
    let nil = nilradical(ring, opts.exec);
    let nilradical = ideals
        .iter()
        .position(|i| *i == nil)
        .expect("the nilradical is an ideal of the lattice");
    let PrimeClassification { primes, maximal, minimal_primes } = classify_primes(ring, &ideals);
    let primitive = primitive_idempotents(ring, opts.exec);
    Ok(LatticeReport {
        is_reduced: ideals[nilradical].is_zero(),
        is_local: maximal.len() == 1,
        ideals,
        zero,
        unit,
        nilradical,
        primes,
        maximal,
        minimal_primes,
        primitive_idempotents: primitive,
    })
}

/// Intersection of a family of ideals (elementwise).
pub fn intersection<'a>(ring: &FiniteRing, family: impl IntoIterator<Item = &'a Ideal>) -> Ideal {
    let mut bits = vec![!0u64; words(ring.order())];
    for i in family {
        for (w, b) in bits.iter_mut().zip(&i.bits) {
            *w &= b;
        }
    }
    let elements = elements_of(&bits, ring.order());
    let s = span(ring, elements.iter().copied());
    Ideal::from_span(ring.order(), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::*;

    fn lat(r: &FiniteRing) -> LatticeReport {
        analyze_lattice(r, &LatticeOptions::default()).unwrap()
    }

    fn elems(r: &FiniteRing, i: &Ideal) -> Vec<Vec<u32>> {
        i.elements().iter().map(|&x| r.digits_vec(x)).collect()
    }

    #[test]
    fn principal_ideals_in_z6() {
        let z6 = make_zmod(6).unwrap();
        let two = z6.element(&[2]).unwrap();
        assert_eq!(principal_ideal(&z6, &two).unwrap().elements(), &[0, 2, 4]);
        assert_eq!(principal_ideal(&z6, &z6.zero()).unwrap().elements(), &[0]);
    }

    #[test]
    fn principal_ideal_of_2x_in_z4x_mod_x3() {
        let r = make_poly_quotient(&make_zmod(4).unwrap(), &[0, 0, 0, 1]).unwrap();
        let i = principal_ideal(&r, &r.element(&[0, 2, 0]).unwrap()).unwrap();
        // r * 2x = 2 r_0 x + 2 r_1 x^2: the four elements {0, 2x, 2x^2, 2x+2x^2}
        assert_eq!(elems(&r, &i), vec![vec![0, 0, 0], vec![0, 0, 2], vec![0, 2, 0], vec![0, 2, 2]]);
    }

    #[test]
    fn small_lattices() {
        let z6 = make_zmod(6).unwrap();
        let l = lat(&z6);
        let sets: Vec<&[u32]> = l.ideals.iter().map(|i| i.elements()).collect();
        assert_eq!(sets, vec![&[0][..], &[0, 3], &[0, 2, 4], &[0, 1, 2, 3, 4, 5]]);
        let z8 = make_zmod(8).unwrap();
        let l = lat(&z8);
        assert_eq!(l.ideals.len(), 4);
        assert_eq!(l.nilradical_ideal().elements(), &[0, 2, 4, 6]);
        assert!(!l.is_reduced && l.is_local);
        let r = direct_product(&[make_gf(2, 1).unwrap(), make_gf(3, 1).unwrap(), make_gf(5, 1).unwrap()])
            .unwrap();
        assert_eq!(lat(&r).ideals.len(), 8);
    }

    #[test]
    fn lattice_bound_is_enforced() {
        let r = make_zmod(5000).unwrap();
        let err = enumerate_ideals(&r, &LatticeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { bound: 4096, .. }));
    }

    #[test]
    fn nilradicals() {
        let z6 = make_zmod(6).unwrap();
        assert!(nilradical(&z6, Exec::Sequential).is_zero());
        let r = make_poly_quotient(&z6, &[0, 0, 1]).unwrap();
        let nil = nilradical(&r, Exec::Sequential);
        // a + bx is nilpotent iff a = 0 (6 | a^k forces a = 0), so Nil = (x)
        let expected: Vec<Vec<u32>> = (0..6).map(|b| vec![0, b]).collect();
        assert_eq!(elems(&r, &nil), expected);
        let l = lat(&r);
        let meet = intersection(&r, l.minimal_primes.iter().map(|&i| &l.ideals[i]));
        assert_eq!(meet, nil);
    }

    #[test]
    fn primes_of_small_rings() {
        let z6 = make_zmod(6).unwrap();
        let l = lat(&z6);
        assert_eq!(l.primes, vec![1, 2]);
        assert_eq!(l.maximal, vec![1, 2]);
        assert_eq!(l.minimal_primes, vec![1, 2]);

        let l = lat(&make_zmod(8).unwrap());
        assert_eq!(l.primes.len(), 1);
        assert_eq!(l.ideals[l.primes[0]].elements(), &[0, 2, 4, 6]);
        assert_eq!(l.maximal, l.minimal_primes);

        let z12 = make_zmod(12).unwrap();
        let l = lat(&z12);
        assert_eq!(l.ideals.len(), 6);
        let names: Vec<String> = l.maximal.iter().map(|&i| l.ideals[i].label(&z12)).collect();
        assert_eq!(names, vec!["(3)", "(2)"]);
        assert_eq!(l.minimal_primes, l.maximal);
        assert_eq!(l.nilradical_ideal().label(&z12), "(6)");
    }

    #[test]
    fn products_of_ideals() {
        let z6 = make_zmod(6).unwrap();
        let l = lat(&z6);
        let p = ideal_product(&z6, &l.ideals[1], &l.ideals[2]);
        assert!(p.is_zero());
        let z8 = make_zmod(8).unwrap();
        let l = lat(&z8);
        let two = &l.ideals[2];
        assert_eq!(ideal_product(&z8, two, two).elements(), &[0, 4]);
        for i in &l.ideals {
            assert_eq!(&ideal_product(&z8, i, &l.ideals[l.unit]), i);
            assert!(ideal_product(&z8, i, &l.ideals[l.zero]).is_zero());
        }

        let r = make_poly_quotient(&make_zmod(4).unwrap(), &[0, 0, 0, 1]).unwrap();
        let a = principal_ideal(&r, &r.element(&[0, 2, 0]).unwrap()).unwrap();
        let b = principal_ideal(&r, &r.element(&[2, 0, 0]).unwrap()).unwrap();
        // every product (2x r)(2 s) carries a factor 4 = 0
        assert!(ideal_product(&r, &a, &b).is_zero());
        assert_eq!(ideal_product(&r, &a, &b), ideal_product(&r, &b, &a));
    }

    #[test]
    fn idempotents() {
        let z6 = make_zmod(6).unwrap();
        assert_eq!(primitive_idempotents(&z6, Exec::Sequential), vec![4, 3]);
        let z8 = make_zmod(8).unwrap();
        assert_eq!(primitive_idempotents(&z8, Exec::Sequential), vec![1]);
        let r = direct_product(&[make_gf(2, 1).unwrap(), make_gf(3, 1).unwrap()]).unwrap();
        let pi: Vec<Vec<u32>> =
            primitive_idempotents(&r, Exec::Sequential).iter().map(|&e| r.digits_vec(e)).collect();
        assert_eq!(pi, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn ideal_labels() {
        let z6 = make_zmod(6).unwrap();
        let l = lat(&z6);
        let labels: Vec<String> = l.ideals.iter().map(|i| i.label(&z6)).collect();
        assert_eq!(labels, vec!["(0)", "(3)", "(2)", "(1)"]);
    }
}
