mod common;

use std::collections::BTreeSet;

use common::{census_rings, Set, Table};
use nilgraph::lattice::{analyze_lattice, ideal_product, intersection, LatticeOptions, LatticeReport};
use nilgraph::ring::{direct_product, make_gf, make_poly_quotient, make_zmod, FiniteRing};

fn lattice(r: &FiniteRing) -> LatticeReport {
    analyze_lattice(r, &LatticeOptions::default()).unwrap()
}

fn as_set(els: &[u32]) -> Set {
    els.iter().copied().collect()
}

#[test]
fn sum_closure_matches_subgroup_filtering() {
    let rings = census_rings(100);
    assert!(rings.len() > 80);
    for (spec, r) in &rings {
        let t = Table::new(r);
        let want = t.ideals();
        let got: BTreeSet<Set> = lattice(r).ideals.iter().map(|i| as_set(i.elements())).collect();
        assert_eq!(got, want, "{spec}");
    }
}

#[test]
fn nilradical_primes_and_idempotents() {
    for (spec, r) in census_rings(100) {
        let t = Table::new(&r);
        let l = lattice(&r);
        let nil = t.nilpotents();
        assert_eq!(as_set(l.nilradical_ideal().elements()), nil, "{spec}");
        let primes: Vec<Set> = t.ideals().into_iter().filter(|p| t.is_prime(p)).collect();
        let minimal: Vec<&Set> = primes.iter().filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p))).collect();
        let got_min: BTreeSet<Set> = l.minimal_primes.iter().map(|&i| as_set(l.ideals[i].elements())).collect();
        assert_eq!(got_min, minimal.iter().map(|s| (*s).clone()).collect(), "{spec}");
        let meet = intersection(&r, l.minimal_primes.iter().map(|&i| &l.ideals[i]));
        assert_eq!(as_set(meet.elements()), nil, "{spec}");
        assert_eq!(l.primitive_idempotents.len(), l.maximal.len(), "{spec}");
        // primitive: no nonzero idempotent strictly below
        let ids = t.idempotents();
        for &e in &l.primitive_idempotents {
            assert!(ids.contains(&e));
            let below = ids.iter().filter(|&&f| f != e && t.mul[f as usize][e as usize] == f).count();
            assert_eq!(below, 0, "{spec}: {e} not primitive");
        }
        assert_eq!(l.is_reduced, nil.len() == 1, "{spec}");
        assert_eq!(l.is_local, l.maximal.len() == 1, "{spec}");
    }
}

#[test]
fn reducedness_of_standard_families() {
    let f = |p| make_gf(p, 1).unwrap();
    let fields = direct_product(&[f(2), f(3), f(5)]).unwrap();
    assert!(lattice(&fields).is_reduced);
    for (p, k) in [(2, 2), (2, 5), (3, 3), (5, 2), (7, 2)] {
        let r = make_zmod(u32::pow(p, k)).unwrap();
        assert!(!lattice(&r).is_reduced, "Z{}", p.pow(k));
    }
}

#[test]
fn products_with_unit_and_zero() {
    let z2 = make_zmod(2).unwrap();
    let rings = [
        make_zmod(36).unwrap(),
        make_poly_quotient(&make_zmod(4).unwrap(), &[0, 0, 0, 1]).unwrap(),
        direct_product(&[z2.clone(), make_zmod(8).unwrap()]).unwrap(),
    ];
    for r in &rings {
        let l = lattice(r);
        for i in &l.ideals {
            assert_eq!(&ideal_product(r, i, &l.ideals[l.unit]), i);
            assert!(ideal_product(r, i, &l.ideals[l.zero]).is_zero());
        }
    }
}
