//! Krasner (m,n)-hyperring axioms and the iterated operations `f_(l)`, `g_(l)`.
//!
//! Tables are commutative by construction, so every quantifier over argument
//! tuples is evaluated over sorted multisets. For associativity this means:
//! a `(2k-1)`-tuple with the inner operation at position `i` evaluates to
//! `op(op(T), M \ T)` where `M` is the multiset of the tuple and `T` the
//! multiset of the window, and every sub-multiset `T` of `M` occurs as a
//! window of some arrangement. Associativity therefore holds iff
//! `op(op(T), M \ T)` does not depend on `T`. Sub-multisets are connected by
//! single swaps, so a failure always shows up between two windows that differ
//! in one element, and the tuple `(a, T\a, b, M\T\b)` witnesses it at
//! positions 1 and 2.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::multiset::for_each_multiset;
use crate::structure::HyperStructure;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AxiomId {
    FValueEmpty,
    AssocF,
    Neutral,
    InverseUnique,
    Reversibility,
    QuasiSolvable,
    AssocG,
    Distrib,
    ZeroAbsorb,
    OneIdentity,
}

impl AxiomId {
    pub fn tag(self) -> &'static str {
        match self {
            AxiomId::FValueEmpty => "F_VALUE_EMPTY",
            AxiomId::AssocF => "ASSOC_F",
            AxiomId::Neutral => "NEUTRAL",
            AxiomId::InverseUnique => "INVERSE_UNIQUE",
            AxiomId::Reversibility => "REVERSIBILITY",
            AxiomId::QuasiSolvable => "QUASI_SOLVABLE",
            AxiomId::AssocG => "ASSOC_G",
            AxiomId::Distrib => "DISTRIB",
            AxiomId::ZeroAbsorb => "ZERO_ABSORB",
            AxiomId::OneIdentity => "ONE_IDENTITY",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One failed quantifier instance.
///
/// Witness layouts, by axiom:
/// - `ASSOC_F`/`ASSOC_G`: the full `(2k-1)`-tuple; `positions` holds the two
///   1-based positions of the inner operation whose results differ.
/// - `NEUTRAL`: `[x]` with `f(x, 0, ..., 0) != {x}`, or `[0, e]` when `e` is a
///   second neutral element.
/// - `INVERSE_UNIQUE`: `[x]`, the element without exactly one inverse.
/// - `REVERSIBILITY`: `[x, x_1, ..., x_m]` with `x in f(x_1..x_m)`; `positions`
///   holds the 1-based index `i` whose recovery fails.
/// - `QUASI_SOLVABLE`: `[a_1, ..., a_{m-1}, b]` with no `x` such that
///   `b in f(a_1, ..., a_{m-1}, x)`.
/// - `DISTRIB`: `[a_1, ..., a_{n-1}, x_1, ..., x_m]`, checking
///   `g(f(x_1..x_m), a_1..a_{n-1})` against the distributed form.
/// - `ZERO_ABSORB`: `[x_2, ..., x_n]` with `g(0, x_2..x_n) != 0`.
/// - `ONE_IDENTITY`: `[x]` with `g(1, ..., 1, x) != x`.
/// - `F_VALUE_EMPTY`: the `m`-tuple with an empty value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: AxiomId,
    pub witness: Vec<Element>,
    pub positions: Vec<usize>,
    pub detail: String,
}

impl AxiomViolation {
    /// Re-evaluates the witness and reports whether the violation is genuine.
    pub fn replay(&self, a: &HyperStructure) -> bool {
        let w = &self.witness;
        let e = a.zero();
        match self.axiom {
            AxiomId::FValueEmpty => w.len() == a.m() && a.f(w).is_empty(),
            AxiomId::AssocF | AxiomId::AssocG => {
                let is_f = self.axiom == AxiomId::AssocF;
                let k = if is_f { a.m() } else { a.n() };
                if w.len() != 2 * k - 1 || self.positions.len() != 2 {
                    return false;
                }
                let (i, j) = (self.positions[0], self.positions[1]);
                if i == 0 || j == 0 || i > k || j > k {
                    return false;
                }
                window_value(a, is_f, w, i - 1) != window_value(a, is_f, w, j - 1)
            }
            AxiomId::Neutral => match w.as_slice() {
                [x] => a.f(&padded(*x, e, a.m())) != ElementSet::singleton(*x),
                [z, other] => *z == e && *other != e && is_neutral(a, *other),
                _ => false,
            },
            AxiomId::InverseUnique => w.len() == 1 && inverse_candidates(a, w[0]).len() != 1,
            AxiomId::Reversibility => {
                if w.len() != a.m() + 1 || self.positions.len() != 1 {
                    return false;
                }
                let (x, xs) = (w[0], &w[1..]);
                let i = self.positions[0];
                if i == 0 || i > xs.len() || !a.f(xs).contains(x) {
                    return false;
                }
                match reversal_set(a, x, xs, i - 1) {
                    Some(set) => !set.contains(xs[i - 1]),
                    None => false,
                }
            }
            AxiomId::QuasiSolvable => w.len() == a.m() && !solvable_union(a, &w[..a.m() - 1]).contains(w[a.m() - 1]),
            AxiomId::Distrib => {
                if w.len() != a.n() - 1 + a.m() {
                    return false;
                }
                let (others, xs) = w.split_at(a.n() - 1);
                let (lhs, rhs) = distrib_sides(a, others, xs);
                lhs != rhs
            }
            AxiomId::ZeroAbsorb => {
                if w.len() != a.n() - 1 {
                    return false;
                }
                let mut t = w.clone();
                t.push(e);
                a.g(&t) != e
            }
            AxiomId::OneIdentity => match (a.one(), w.as_slice()) {
                (Some(one), [x]) => a.g(&padded(*x, one, a.n())) != *x,
                _ => false,
            },
        }
    }

    pub fn render(&self, a: &HyperStructure) -> String {
        let mut s = format!("{} witness {}", self.axiom, a.render_tuple(&self.witness));
        if !self.positions.is_empty() {
            let p: Vec<String> = self.positions.iter().map(usize::to_string).collect();
            s.push_str(&format!(" positions {}", p.join(",")));
        }
        if !self.detail.is_empty() {
            s.push_str(": ");
            s.push_str(&self.detail);
        }
        s
    }
}

/// How many violations to collect.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Every violation, sorted by witness.
    #[default]
    All,
    /// Stop after the first violation found in check order.
    First,
}

struct Sink {
    mode: Mode,
    out: Vec<AxiomViolation>,
}

impl Sink {
    fn push(&mut self, v: AxiomViolation) -> ControlFlow<()> {
        self.out.push(v);
        if self.mode == Mode::First {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    fn finish(mut self) -> Vec<AxiomViolation> {
        self.out.sort_by(|x, y| (&x.witness, x.axiom, &x.positions).cmp(&(&y.witness, y.axiom, &y.positions)));
        self.out
    }
}

/// Canonical m-ary hypergroup axioms for `(A, f)` with neutral element `zero`.
pub fn check_canonical_hypergroup(a: &HyperStructure) -> Vec<AxiomViolation> {
    check_canonical_hypergroup_with(a, Mode::All)
}

pub fn check_canonical_hypergroup_with(a: &HyperStructure, mode: Mode) -> Vec<AxiomViolation> {
    let mut sink = Sink { mode, out: Vec::new() };
    let _ = canonical_checks(a, &mut sink);
    sink.finish()
}

/// All Krasner (m,n)-hyperring axioms.
pub fn check_krasner(a: &HyperStructure) -> Vec<AxiomViolation> {
    check_krasner_with(a, Mode::All)
}

pub fn check_krasner_with(a: &HyperStructure, mode: Mode) -> Vec<AxiomViolation> {
    let mut sink = Sink { mode, out: Vec::new() };
    if canonical_checks(a, &mut sink).is_continue() {
        let _ = ring_checks(a, &mut sink);
    }
    sink.finish()
}

fn canonical_checks(a: &HyperStructure, sink: &mut Sink) -> ControlFlow<()> {
    let carrier = a.element_vec();
    let m = a.m();
    let e = a.zero();

    for_each_multiset(&carrier, m, |t| {
        if a.f(t).is_empty() {
            sink.push(AxiomViolation {
                axiom: AxiomId::FValueEmpty,
                witness: t.to_vec(),
                positions: vec![],
                detail: "empty hyperoperation value".into(),
            })?;
        }
        ControlFlow::Continue(())
    })?;

    check_associativity(a, true, sink)?;

    for x in a.elements() {
        let v = a.f(&padded(x, e, m));
        if v != ElementSet::singleton(x) {
            sink.push(AxiomViolation {
                axiom: AxiomId::Neutral,
                witness: vec![x],
                positions: vec![],
                detail: format!("f(x, 0, ...) = {}", a.render_set(v)),
            })?;
        }
    }
    for other in a.elements().filter(|x| *x != e) {
        if is_neutral(a, other) {
            sink.push(AxiomViolation {
                axiom: AxiomId::Neutral,
                witness: vec![e, other],
                positions: vec![],
                detail: "neutral element is not unique".into(),
            })?;
        }
    }

    let mut inverse = vec![None; a.size()];
    for x in a.elements() {
        let cands = inverse_candidates(a, x);
        if cands.len() == 1 {
            inverse[x.index()] = cands.first();
        } else {
            sink.push(AxiomViolation {
                axiom: AxiomId::InverseUnique,
                witness: vec![x],
                positions: vec![],
                detail: format!("inverse candidates {}", a.render_set(cands)),
            })?;
        }
    }

    // reversibility needs every inverse; elements lacking one are already reported
    for_each_multiset(&carrier, m, |xs| {
        for x in a.f(xs) {
            for i in 0..m {
                if i > 0 && xs[i] == xs[i - 1] {
                    continue;
                }
                let Some(set) = reversal_set_with(a, x, xs, i, &inverse) else {
                    continue;
                };
                if !set.contains(xs[i]) {
                    let mut witness = vec![x];
                    witness.extend_from_slice(xs);
                    sink.push(AxiomViolation {
                        axiom: AxiomId::Reversibility,
                        witness,
                        positions: vec![i + 1],
                        detail: format!("x_{} not in {}", i + 1, a.render_set(set)),
                    })?;
                }
            }
        }
        ControlFlow::Continue(())
    })?;

    for_each_multiset(&carrier, m - 1, |others| {
        let reach = solvable_union(a, others);
        for b in a.full_set().difference(reach) {
            let mut witness = others.to_vec();
            witness.push(b);
            sink.push(AxiomViolation {
                axiom: AxiomId::QuasiSolvable,
                witness,
                positions: vec![],
                detail: "no solution x".into(),
            })?;
        }
        ControlFlow::Continue(())
    })
}

fn ring_checks(a: &HyperStructure, sink: &mut Sink) -> ControlFlow<()> {
    let carrier = a.element_vec();
    let (m, n) = (a.m(), a.n());
    let e = a.zero();

    check_associativity(a, false, sink)?;

    for_each_multiset(&carrier, n - 1, |others| {
        for_each_multiset(&carrier, m, |xs| {
            let (lhs, rhs) = distrib_sides(a, others, xs);
            if lhs != rhs {
                let mut witness = others.to_vec();
                witness.extend_from_slice(xs);
                sink.push(AxiomViolation {
                    axiom: AxiomId::Distrib,
                    witness,
                    positions: vec![],
                    detail: format!("{} != {}", a.render_set(lhs), a.render_set(rhs)),
                })?;
            }
            ControlFlow::Continue(())
        })
    })?;

    for_each_multiset(&carrier, n - 1, |others| {
        let mut t = others.to_vec();
        t.push(e);
        let v = a.g(&t);
        if v != e {
            sink.push(AxiomViolation {
                axiom: AxiomId::ZeroAbsorb,
                witness: others.to_vec(),
                positions: vec![],
                detail: format!("g(0, ...) = {}", a.element_name(v)),
            })?;
        }
        ControlFlow::Continue(())
    })?;

    if let Some(one) = a.one() {
        for x in a.elements() {
            let v = a.g(&padded(x, one, n));
            if v != x {
                sink.push(AxiomViolation {
                    axiom: AxiomId::OneIdentity,
                    witness: vec![x],
                    positions: vec![],
                    detail: format!("g(1, ..., 1, x) = {}", a.element_name(v)),
                })?;
            }
        }
    }
    ControlFlow::Continue(())
}

/// `[x, fill, ..., fill]` of the given length.
fn padded(x: Element, fill: Element, len: usize) -> Vec<Element> {
    let mut v = vec![fill; len];
    v[0] = x;
    v
}

fn is_neutral(a: &HyperStructure, e: Element) -> bool {
    a.elements().all(|x| a.f(&padded(x, e, a.m())) == ElementSet::singleton(x))
}

/// `{ y : 0 in f(x, y, 0, ..., 0) }`.
fn inverse_candidates(a: &HyperStructure, x: Element) -> ElementSet {
    let e = a.zero();
    let mut t = vec![e; a.m()];
    t[0] = x;
    a.elements()
        .filter(|y| {
            t[1] = *y;
            a.f(&t).contains(e)
        })
        .collect()
}

/// Inverse of `x` when it is unique.
pub fn inverse(a: &HyperStructure, x: Element) -> Option<Element> {
    let c = inverse_candidates(a, x);
    if c.len() == 1 {
        c.first()
    } else {
        None
    }
}

fn reversal_set(a: &HyperStructure, x: Element, xs: &[Element], i: usize) -> Option<ElementSet> {
    let inverse: Vec<Option<Element>> = a.elements().map(|y| inverse(a, y)).collect();
    reversal_set_with(a, x, xs, i, &inverse)
}

/// `f(x, x_1^{-1}, ..., x_{i-1}^{-1}, x_{i+1}^{-1}, ..., x_m^{-1})`.
fn reversal_set_with(
    a: &HyperStructure,
    x: Element,
    xs: &[Element],
    i: usize,
    inverse: &[Option<Element>],
) -> Option<ElementSet> {
    let mut t = Vec::with_capacity(xs.len());
    t.push(x);
    for (j, y) in xs.iter().enumerate() {
        if j != i {
            t.push(inverse[y.index()]?);
        }
    }
    Some(a.f(&t))
}

/// `U_x f(a_1, ..., a_{m-1}, x)`.
fn solvable_union(a: &HyperStructure, others: &[Element]) -> ElementSet {
    let mut t = others.to_vec();
    t.push(a.zero());
    let last = t.len() - 1;
    let mut out = ElementSet::EMPTY;
    for x in a.elements() {
        t[last] = x;
        out = out.union(a.f(&t));
    }
    out
}

/// Both sides of distributivity with `f(xs)` placed among `others` in `g`.
fn distrib_sides(a: &HyperStructure, others: &[Element], xs: &[Element]) -> (ElementSet, ElementSet) {
    let mut t = others.to_vec();
    t.push(a.zero());
    let last = t.len() - 1;
    let mut lhs = ElementSet::EMPTY;
    for y in a.f(xs) {
        t[last] = y;
        lhs.insert(a.g(&t));
    }
    let distributed: Vec<Element> = xs
        .iter()
        .map(|x| {
            t[last] = *x;
            a.g(&t)
        })
        .collect();
    (lhs, a.f(&distributed))
}

/// Value of a `(2k-1)`-tuple with the inner operation applied at `start`.
fn window_value(a: &HyperStructure, is_f: bool, w: &[Element], start: usize) -> ElementSet {
    let k = if is_f { a.m() } else { a.n() };
    let inner = &w[start..start + k];
    let rest: Vec<Element> = w[..start].iter().chain(&w[start + k..]).copied().collect();
    compose(a, is_f, inner, &rest)
}

/// `op(op(inner), rest...)` as a set.
fn compose(a: &HyperStructure, is_f: bool, inner: &[Element], rest: &[Element]) -> ElementSet {
    let mut t = rest.to_vec();
    t.push(a.zero());
    let last = t.len() - 1;
    if is_f {
        let mut out = ElementSet::EMPTY;
        for y in a.f(inner) {
            t[last] = y;
            out = out.union(a.f(&t));
        }
        out
    } else {
        t[last] = a.g(inner);
        ElementSet::singleton(a.g(&t))
    }
}

fn check_associativity(a: &HyperStructure, is_f: bool, sink: &mut Sink) -> ControlFlow<()> {
    let k = if is_f { a.m() } else { a.n() };
    let axiom = if is_f { AxiomId::AssocF } else { AxiomId::AssocG };
    let carrier = a.element_vec();
    for_each_multiset(&carrier, 2 * k - 1, |whole| {
        let (values, counts) = group(whole);
        let mut results: HashMap<Vec<u8>, ElementSet> = HashMap::new();
        let mut first: Option<ElementSet> = None;
        let mut uniform = true;
        for_each_split(&counts, k, &mut |take| {
            let (inner, rest) = materialize(&values, &counts, take);
            let v = compose(a, is_f, &inner, &rest);
            match first {
                None => first = Some(v),
                Some(f0) if f0 != v => uniform = false,
                _ => {}
            }
            results.insert(take.to_vec(), v);
        });
        if uniform {
            return ControlFlow::Continue(());
        }
        // locate the smallest single-swap witness
        let mut best: Option<Vec<Element>> = None;
        for (take, v) in &results {
            for (ia, &ta) in take.iter().enumerate() {
                if ta == 0 {
                    continue;
                }
                for (ib, &tb) in take.iter().enumerate() {
                    if ib == ia || tb == counts[ib] {
                        continue;
                    }
                    let mut swapped = take.clone();
                    swapped[ia] -= 1;
                    swapped[ib] += 1;
                    if results.get(&swapped) == Some(v) {
                        continue;
                    }
                    let mut inner_rest = take.clone();
                    inner_rest[ia] -= 1;
                    let mut outer_rest: Vec<u8> = counts.iter().zip(take).map(|(c, t)| c - t).collect();
                    outer_rest[ib] -= 1;
                    let mut witness = vec![values[ia]];
                    witness.extend(expand(&values, &inner_rest));
                    witness.push(values[ib]);
                    witness.extend(expand(&values, &outer_rest));
                    if best.as_ref().is_none_or(|b| witness < *b) {
                        best = Some(witness);
                    }
                }
            }
        }
        let witness = best.expect("non-uniform values imply a differing single swap");
        let l = window_value(a, is_f, &witness, 0);
        let r = window_value(a, is_f, &witness, 1);
        sink.push(AxiomViolation {
            axiom,
            witness,
            positions: vec![1, 2],
            detail: format!("{} != {}", a.render_set(l), a.render_set(r)),
        })
    })
}

fn group(sorted: &[Element]) -> (Vec<Element>, Vec<u8>) {
    let mut values = Vec::new();
    let mut counts: Vec<u8> = Vec::new();
    for x in sorted {
        if values.last() == Some(x) {
            *counts.last_mut().unwrap() += 1;
        } else {
            values.push(*x);
            counts.push(1);
        }
    }
    (values, counts)
}

fn expand(values: &[Element], counts: &[u8]) -> Vec<Element> {
    values.iter().zip(counts).flat_map(|(v, c)| std::iter::repeat_n(*v, *c as usize)).collect()
}

fn materialize(values: &[Element], counts: &[u8], take: &[u8]) -> (Vec<Element>, Vec<Element>) {
    let rest: Vec<u8> = counts.iter().zip(take).map(|(c, t)| c - t).collect();
    (expand(values, take), expand(values, &rest))
}

/// Enumerates count vectors `take <= counts` summing to `k`.
fn for_each_split(counts: &[u8], k: usize, visit: &mut dyn FnMut(&[u8])) {
    fn go(counts: &[u8], pos: usize, left: usize, take: &mut Vec<u8>, visit: &mut dyn FnMut(&[u8])) {
        if pos == counts.len() {
            if left == 0 {
                visit(take);
            }
            return;
        }
        let tail: usize = counts[pos + 1..].iter().map(|c| *c as usize).sum();
        let lo = left.saturating_sub(tail);
        let hi = left.min(counts[pos] as usize);
        for c in lo..=hi {
            take[pos] = c as u8;
            go(counts, pos + 1, left - c, take, visit);
        }
        take[pos] = 0;
    }
    let mut take = vec![0u8; counts.len()];
    go(counts, 0, k, &mut take, visit);
}

/// `f_(l)(x_1, ..., x_{l(m-1)+1})`, nested to the left.
pub fn iterate_f(a: &HyperStructure, l: usize, args: &[Element]) -> Result<ElementSet> {
    let m = a.m();
    let expected = l * (m - 1) + 1;
    if l == 0 || args.len() != expected {
        return Err(Error::ArityMismatch { expected, got: args.len() });
    }
    let mut acc = a.eval_f(&args[..m])?;
    for chunk in args[m..].chunks(m - 1) {
        let mut sets = vec![acc];
        sets.extend(chunk.iter().map(|x| ElementSet::singleton(*x)));
        acc = a.eval_f_on_sets(&sets)?;
    }
    Ok(acc)
}

/// `g_(l)(x_1, ..., x_{l(n-1)+1})`, nested to the left.
pub fn iterate_g(a: &HyperStructure, l: usize, args: &[Element]) -> Result<Element> {
    let n = a.n();
    let expected = l * (n - 1) + 1;
    if l == 0 || args.len() != expected {
        return Err(Error::ArityMismatch { expected, got: args.len() });
    }
    let mut acc = a.eval_g(&args[..n])?;
    let mut t = Vec::with_capacity(n);
    for chunk in args[n..].chunks(n - 1) {
        t.clear();
        t.push(acc);
        t.extend_from_slice(chunk);
        acc = a.g(&t);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, ring_zk};
    use crate::set_of;

    fn e(i: usize) -> Element {
        Element::new(i)
    }

    /// Exhaustive tuple-level associativity check, independent of the
    /// multiset reduction above.
    fn assoc_by_tuples(a: &HyperStructure, is_f: bool) -> bool {
        let k = if is_f { a.m() } else { a.n() };
        let len = 2 * k - 1;
        let size = a.size();
        let total = size.pow(len as u32);
        let mut t = vec![e(0); len];
        for code in 0..total {
            let mut c = code;
            for slot in t.iter_mut() {
                *slot = e(c % size);
                c /= size;
            }
            let first = window_value(a, is_f, &t, 0);
            for j in 1..k {
                if window_value(a, is_f, &t, j) != first {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn paper_2_4_is_krasner() {
        let a = fixture("paper-2-4").unwrap().structure;
        assert_eq!(check_canonical_hypergroup(&a), vec![]);
        assert_eq!(check_krasner(&a), vec![]);
        assert_eq!(inverse(&a, e(1)), Some(e(1)));
        assert_eq!(inverse(&a, e(2)), Some(e(2)));
        assert_eq!(inverse(&a, e(3)), Some(e(3)));
    }

    #[test]
    fn rings_are_krasner() {
        for k in [1, 2, 3, 4, 5, 6, 8, 9, 12] {
            assert!(check_krasner(&ring_zk(k)).is_empty(), "Z{k}");
        }
    }

    #[test]
    fn singleton_structure_is_trivial_hypergroup() {
        let a = HyperStructure::from_fn("t", 2, 2, vec!["0".into()], e(0), None, |_| set_of(&[0]), |_| e(0)).unwrap();
        assert!(check_canonical_hypergroup(&a).is_empty());
        assert!(check_krasner(&a).is_empty());
    }

    #[test]
    fn mutated_madar_reports_replayable_violation() {
        let a = fixture("paper-2-4").unwrap().structure;
        let bad = a.with_f_value(&[e(2), e(2)], set_of(&[1])).unwrap();
        let v = check_canonical_hypergroup(&bad);
        assert!(v.iter().any(|x| matches!(x.axiom, AxiomId::Neutral | AxiomId::InverseUnique)));
        assert!(v.iter().all(|x| x.replay(&bad)), "{v:?}");
        assert!(v.iter().all(|x| !x.replay(&a)) || v.iter().any(|x| !x.replay(&a)));
    }

    #[test]
    fn mutated_z6_reports_ring_violation() {
        let a = ring_zk(6);
        let bad = a.with_g_value(&[e(2), e(3)], e(1)).unwrap();
        let v = check_krasner(&bad);
        assert!(v.iter().any(|x| matches!(x.axiom, AxiomId::Distrib | AxiomId::AssocG)), "{v:?}");
        assert!(v.iter().all(|x| x.replay(&bad)));
        let first = check_krasner_with(&bad, Mode::First);
        assert_eq!(first.len(), 1);
        assert!(first[0].replay(&bad));
    }

    #[test]
    fn violations_are_sorted_by_witness() {
        let bad = ring_zk(4).with_f_value(&[e(1), e(1)], set_of(&[3])).unwrap();
        let v = check_krasner(&bad);
        assert!(!v.is_empty());
        assert!(v.windows(2).all(|w| w[0].witness <= w[1].witness));
    }

    #[test]
    fn multiset_associativity_matches_tuple_oracle() {
        let madar = fixture("paper-2-4").unwrap().structure;
        let ex = fixture("paper-3-3").unwrap().structure;
        let mut cases = vec![ring_zk(4), ring_zk(5), madar.clone(), ex.clone()];
        cases.push(ring_zk(4).with_f_value(&[e(1), e(1)], set_of(&[3])).unwrap());
        cases.push(ring_zk(5).with_g_value(&[e(2), e(2)], e(1)).unwrap());
        cases.push(madar.with_f_value(&[e(1), e(2)], set_of(&[2, 3])).unwrap());
        cases.push(madar.with_g_value(&[e(2), e(2), e(2), e(3)], e(0)).unwrap());
        cases.push(ex.with_g_value(&[e(1), e(1), e(2)], e(1)).unwrap());
        for a in &cases {
            for is_f in [true, false] {
                let axiom = if is_f { AxiomId::AssocF } else { AxiomId::AssocG };
                let by_multiset = !check_krasner(a).iter().any(|v| v.axiom == axiom);
                assert_eq!(by_multiset, assoc_by_tuples(a, is_f), "{} is_f={is_f}", a.name());
            }
        }
    }

    #[test]
    fn iterated_f() {
        let a = fixture("paper-2-4").unwrap().structure;
        assert_eq!(iterate_f(&a, 1, &[e(1), e(3)]).unwrap(), a.f(&[e(1), e(3)]));
        // f({0,1}, 1) = {1} u {0,1}
        assert_eq!(iterate_f(&a, 2, &[e(1), e(1), e(1)]).unwrap(), set_of(&[0, 1]));
        assert!(matches!(iterate_f(&a, 2, &[e(1), e(1)]), Err(Error::ArityMismatch { .. })));
        let z6 = ring_zk(6);
        assert_eq!(iterate_f(&z6, 2, &[e(1), e(2), e(3)]).unwrap(), set_of(&[0]));
    }

    #[test]
    fn iterated_g() {
        let a = fixture("paper-2-4").unwrap().structure;
        assert_eq!(iterate_g(&a, 1, &[e(2), e(2), e(3), e(1)]).unwrap(), e(0));
        assert_eq!(iterate_g(&a, 2, &[e(2); 7]).unwrap(), e(2));
        assert!(iterate_g(&a, 2, &[e(2); 6]).is_err());
        assert_eq!(iterate_g(&ring_zk(4), 2, &[e(2), e(2), e(2)]).unwrap(), e(0));
    }

    #[test]
    fn iterate_f_recursion() {
        // f_(l+1)(xs ++ ys) = f(f_(l)(xs), ys)
        let a = fixture("paper-3-3").unwrap().structure;
        let xs = [e(1), e(2), e(0), e(2), e(1)];
        let inner = iterate_f(&a, 2, &xs).unwrap();
        let mut all = xs.to_vec();
        all.extend([e(2), e(1)]);
        let expected = a.eval_f_on_sets(&[inner, ElementSet::singleton(e(2)), ElementSet::singleton(e(1))]).unwrap();
        assert_eq!(iterate_f(&a, 3, &all).unwrap(), expected);
    }
}
