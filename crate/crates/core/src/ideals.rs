//! Hyperideals: recognition, enumeration, generated ideals, colons, products
//! and radicals.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::inverse;
use crate::budget::Budget;
use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::multiset::for_each_multiset;
use crate::predicates::{prime_scan, Counterexample, Verdict};
use crate::structure::HyperStructure;

/// Whether `q` is a hyperideal: an m-ary subhypergroup under `f` that absorbs
/// `g`. A failing verdict carries the offending tuple and names the clause in
/// its note.
pub fn is_hyperideal(a: &HyperStructure, q: ElementSet) -> Verdict {
    match hyperideal_failure(a, q) {
        None => Verdict::yes(),
        Some((tuple, clause)) => Verdict::no(Counterexample::Tuple(tuple)).with_note(clause),
    }
}

fn hyperideal_failure(a: &HyperStructure, q: ElementSet) -> Option<(Vec<Element>, String)> {
    if !q.is_subset(a.full_set()) {
        return Some((vec![], "set leaves the carrier".into()));
    }
    if !q.contains(a.zero()) {
        return Some((vec![], "zero is missing".into()));
    }
    let members = q.to_vec();
    let mut found = None;
    let _ = for_each_multiset(&members, a.m(), |t| {
        if !a.f(t).is_subset(q) {
            found = Some((t.to_vec(), "f-closure".to_string()));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if found.is_some() {
        return found;
    }
    for x in q {
        if inverse(a, x).is_some_and(|y| !q.contains(y)) {
            return Some((vec![x], "inverse outside the set".into()));
        }
    }
    let _ = for_each_multiset(&members, a.m() - 1, |others| {
        let mut t = others.to_vec();
        t.push(a.zero());
        let last = t.len() - 1;
        let mut reach = ElementSet::EMPTY;
        for x in q {
            t[last] = x;
            reach = reach.union(a.f(&t));
        }
        if let Some(b) = q.difference(reach).first() {
            let mut w = others.to_vec();
            w.push(b);
            found = Some((w, "solvability within the set".to_string()));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if found.is_some() {
        return found;
    }
    let carrier = a.element_vec();
    for x in q {
        let _ = for_each_multiset(&carrier, a.n() - 1, |rest| {
            let mut t = vec![x];
            t.extend_from_slice(rest);
            if !q.contains(a.g(&t)) {
                found = Some((t, "g-absorption".to_string()));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// All hyperideals of a structure, ascending by cardinality then mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLattice {
    pub structure: String,
    ideals: Vec<ElementSet>,
    prime: Vec<bool>,
}

impl IdealLattice {
    pub fn ideals(&self) -> &[ElementSet] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn get(&self, i: usize) -> ElementSet {
        self.ideals[i]
    }

    pub fn index_of(&self, q: ElementSet) -> Option<usize> {
        self.ideals.iter().position(|x| *x == q)
    }

    pub fn contains(&self, q: ElementSet) -> bool {
        self.index_of(q).is_some()
    }

    pub fn is_prime(&self, i: usize) -> bool {
        self.prime[i]
    }

    pub fn primes(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.ideals.iter().zip(&self.prime).filter(|(_, p)| **p).map(|(q, _)| *q)
    }

    /// Proper hyperideals, in lattice order.
    pub fn proper(&self, a: &HyperStructure) -> Vec<ElementSet> {
        self.ideals.iter().copied().filter(|q| *q != a.full_set()).collect()
    }
}

pub fn enumerate_hyperideals(a: &HyperStructure) -> Result<IdealLattice> {
    enumerate_hyperideals_with(a, &Budget::default())
}

/// Exhaustive scan over subsets containing zero.
pub fn enumerate_hyperideals_with(a: &HyperStructure, budget: &Budget) -> Result<IdealLattice> {
    let others: Vec<Element> = a.elements().filter(|x| *x != a.zero()).collect();
    let free = others.len() as u32;
    if free >= 63 || (1u64 << free) > budget.subsets {
        return Err(Error::Capacity(format!("2^{free} candidate subsets exceed the cap of {}", budget.subsets)));
    }
    let zero = a.zero_set();
    let spread = |code: u64| -> ElementSet {
        let mut set = zero;
        for (i, x) in others.iter().enumerate() {
            if code >> i & 1 == 1 {
                set.insert(*x);
            }
        }
        set
    };
    let mut ideals: Vec<ElementSet> =
        (0..1u64 << free).into_par_iter().map(spread).filter(|q| hyperideal_failure(a, *q).is_none()).collect();
    ideals.sort_by_key(|q| (q.len(), q.bits()));
    let prime = ideals.iter().map(|q| *q != a.full_set() && prime_scan(a, *q, false).is_empty()).collect();
    Ok(IdealLattice { structure: a.name().to_string(), ideals, prime })
}

/// `g(s, x, 1, ..., 1)`; identity-free when `n = 2`.
pub fn scale(a: &HyperStructure, s: Element, x: Element) -> Result<Element> {
    let mut t = Vec::with_capacity(a.n());
    t.push(s);
    t.push(x);
    if a.n() > 2 {
        let one = a.one().ok_or_else(|| identity_required(a))?;
        t.resize(a.n(), one);
    }
    Ok(a.g(&t))
}

/// `g(s, X, 1, ..., 1)` for a set `X`.
pub fn scale_set(a: &HyperStructure, s: Element, xs: ElementSet) -> Result<ElementSet> {
    xs.iter().map(|x| scale(a, s, x)).collect()
}

pub(crate) fn identity_required(a: &HyperStructure) -> Error {
    Error::IdentityRequired(format!("{} has n = {} and no scalar identity", a.name(), a.n()))
}

/// `<x> = g(A, x, 1, ..., 1)`.
pub fn generated_hyperideal(a: &HyperStructure, x: Element) -> Result<ElementSet> {
    a.elements().map(|r| scale(a, r, x)).collect()
}

/// `(Q : x) = { a : g(a, x, 1, ..., 1) in Q }`.
pub fn colon(a: &HyperStructure, q: ElementSet, x: Element) -> Result<ElementSet> {
    let mut out = ElementSet::EMPTY;
    for r in a.elements() {
        if q.contains(scale(a, r, x)?) {
            out.insert(r);
        }
    }
    Ok(out)
}

/// The annihilator `(0 : x)`.
pub fn colon_zero(a: &HyperStructure, x: Element) -> Result<ElementSet> {
    colon(a, a.zero_set(), x)
}

/// Raw setwise image `g(Q_1, ..., Q_n)`.
pub fn set_product(a: &HyperStructure, qs: &[ElementSet]) -> Result<ElementSet> {
    a.eval_g_on_sets(qs)
}

/// Intersection of the prime hyperideals of `lattice` containing `q`, or the
/// whole carrier when there is none.
pub fn radical(a: &HyperStructure, q: ElementSet, lattice: &IdealLattice) -> ElementSet {
    lattice.primes().filter(|p| q.is_subset(*p)).fold(a.full_set(), |acc, p| acc.intersection(p))
}

/// Whether some power `g(x^(u), 1^(n-u))`, `u <= n`, or `g_(l)(x^(l(n-1)+1))`
/// lies in `q`. Iterated powers are followed until they repeat.
pub fn radical_membership(a: &HyperStructure, q: ElementSet, x: Element) -> Result<bool> {
    let n = a.n();
    let one = a.one();
    if n > 2 && one.is_none() {
        return Err(identity_required(a));
    }
    if q.contains(x) {
        return Ok(true);
    }
    for u in 2..=n {
        let mut t = vec![x; u];
        t.resize(n, one.unwrap_or(x));
        if q.contains(a.g(&t)) {
            return Ok(true);
        }
    }
    let mut t = vec![x; n];
    let mut power = a.g(&t);
    let mut seen = ElementSet::EMPTY;
    while !seen.contains(power) {
        if q.contains(power) {
            return Ok(true);
        }
        seen.insert(power);
        t[0] = power;
        power = a.g(&t);
    }
    Ok(false)
}

/// Radical as the set of elements passing [`radical_membership`].
pub fn radical_by_powers(a: &HyperStructure, q: ElementSet) -> Result<ElementSet> {
    let mut out = ElementSet::EMPTY;
    for x in a.elements() {
        if radical_membership(a, q, x)? {
            out.insert(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, ring_zk};
    use crate::set_of;

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    fn brute_ideals(a: &HyperStructure) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> =
            (0..1u64 << a.size()).map(ElementSet::from_bits).filter(|q| is_hyperideal(a, *q).holds).collect();
        out.sort_by_key(|q| (q.len(), q.bits()));
        out
    }

    #[test]
    fn madar_ideals() {
        let a = fixture("paper-2-4").unwrap().structure;
        assert!(is_hyperideal(&a, set_of(&[0])).holds);
        assert!(is_hyperideal(&a, set_of(&[0, 2])).holds);
        // 1+1 = {0,1}, 1+0 = {1}; g(1, ...) = 0 since 1 is outside J
        assert!(is_hyperideal(&a, set_of(&[0, 1])).holds);
        let v = is_hyperideal(&a, set_of(&[0, 3]));
        assert!(!v.holds);
        assert_eq!(v.counterexample, Some(Counterexample::Tuple(vec![e(3), e(3)])));
        let lattice = enumerate_hyperideals(&a).unwrap();
        assert_eq!(lattice.ideals(), &[set_of(&[0]), set_of(&[0, 1]), set_of(&[0, 2]), set_of(&[0, 1, 2, 3])]);
        assert_eq!(lattice.ideals(), brute_ideals(&a).as_slice());
    }

    #[test]
    fn ring_ideals() {
        let z6 = ring_zk(6);
        let lattice = enumerate_hyperideals(&z6).unwrap();
        assert_eq!(lattice.ideals(), &[set_of(&[0]), set_of(&[0, 3]), set_of(&[0, 2, 4]), z6.full_set()]);
        for k in [1, 4, 8, 12] {
            let z = ring_zk(k);
            assert_eq!(enumerate_hyperideals(&z).unwrap().ideals(), brute_ideals(&z).as_slice());
        }
    }

    #[test]
    fn lattice_is_intersection_closed() {
        for name in ["ring:Z12", "paper-2-4", "ring:Z2*ring:Z3"] {
            let a = fixture(name).unwrap().structure;
            let l = enumerate_hyperideals(&a).unwrap();
            assert!(l.contains(a.zero_set()) && l.contains(a.full_set()));
            for x in l.ideals() {
                for y in l.ideals() {
                    assert!(l.contains(x.intersection(*y)), "{name}");
                }
            }
        }
    }

    #[test]
    fn subset_cap() {
        let budget = Budget { evaluations: 1, subsets: 4 };
        assert!(matches!(enumerate_hyperideals_with(&ring_zk(6), &budget), Err(Error::Capacity(_))));
        assert!(enumerate_hyperideals_with(&ring_zk(3), &budget).is_ok());
    }

    #[test]
    fn generated() {
        assert_eq!(generated_hyperideal(&ring_zk(6), e(2)).unwrap(), set_of(&[0, 2, 4]));
        let ex = fixture("paper-3-3").unwrap().structure;
        assert_eq!(generated_hyperideal(&ex, e(2)).unwrap(), set_of(&[0, 2]));
        assert_eq!(generated_hyperideal(&ex, e(0)).unwrap(), set_of(&[0]));
        let madar = fixture("paper-2-4").unwrap().structure;
        assert!(matches!(generated_hyperideal(&madar, e(2)), Err(Error::IdentityRequired(_))));
    }

    #[test]
    fn generated_is_smallest_ideal_containing_x() {
        for k in [4, 6, 12] {
            let z = ring_zk(k);
            let l = enumerate_hyperideals(&z).unwrap();
            for x in z.elements() {
                let smallest = l.ideals().iter().find(|q| q.contains(x)).copied().unwrap();
                assert_eq!(generated_hyperideal(&z, x).unwrap(), smallest);
            }
        }
    }

    #[test]
    fn colons() {
        let ex = fixture("paper-3-3").unwrap().structure;
        assert_eq!(colon(&ex, set_of(&[0, 2]), e(2)).unwrap(), set_of(&[0, 1, 2]));
        assert_eq!(colon_zero(&ex, e(2)).unwrap(), set_of(&[0]));
        let z6 = ring_zk(6);
        assert_eq!(colon(&z6, set_of(&[0, 3]), e(2)).unwrap(), set_of(&[0, 3]));
        assert_eq!(colon_zero(&z6, e(2)).unwrap(), set_of(&[0, 3]));
        assert_eq!(colon_zero(&z6, e(1)).unwrap(), set_of(&[0]));
        for q in enumerate_hyperideals(&z6).unwrap().ideals() {
            assert_eq!(colon(&z6, *q, e(1)).unwrap(), *q);
            for x in z6.elements() {
                assert!(q.is_subset(colon(&z6, *q, x).unwrap()));
            }
        }
    }

    #[test]
    fn products() {
        let madar = fixture("paper-2-4").unwrap().structure;
        let z = set_of(&[0]);
        assert_eq!(set_product(&madar, &[z, z, z, z]).unwrap(), z);
        let q = set_of(&[0, 2]);
        assert_eq!(set_product(&madar, &[q, q, q, q]).unwrap(), q);
        assert_eq!(set_product(&ring_zk(4), &[q, q]).unwrap(), z);
    }

    #[test]
    fn radicals() {
        let z4 = ring_zk(4);
        let l4 = enumerate_hyperideals(&z4).unwrap();
        assert_eq!(radical(&z4, set_of(&[0]), &l4), set_of(&[0, 2]));
        assert_eq!(radical(&z4, z4.full_set(), &l4), z4.full_set());
        let z6 = ring_zk(6);
        let l6 = enumerate_hyperideals(&z6).unwrap();
        assert_eq!(radical(&z6, set_of(&[0]), &l6), set_of(&[0]));

        assert!(radical_membership(&z4, set_of(&[0]), e(2)).unwrap());
        assert!(!radical_membership(&z6, set_of(&[0]), e(2)).unwrap());
        let ex = fixture("paper-3-3").unwrap().structure;
        assert!(!radical_membership(&ex, set_of(&[0]), e(2)).unwrap());
        let madar = fixture("paper-2-4").unwrap().structure;
        assert!(radical_membership(&madar, set_of(&[0]), e(1)).is_err());
    }

    #[test]
    fn radical_characterizations_agree_on_rings() {
        for name in ["ring:Z4", "ring:Z8", "ring:Z12", "ring:Z4*ring:Z3", "ring:Z2*ring:Z2"] {
            let a = fixture(name).unwrap().structure;
            let l = enumerate_hyperideals(&a).unwrap();
            for q in l.proper(&a) {
                assert_eq!(radical(&a, q, &l), radical_by_powers(&a, q).unwrap(), "{name} {q:?}");
            }
        }
    }
}
