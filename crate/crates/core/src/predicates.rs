//! Prime-type predicates on hyperideals, with certificates.
//!
//! Every scan runs over sorted multisets. Failing verdicts report the
//! counterexample with the most distinct entries, ties broken by the
//! lexicographically smallest tuple.

use std::cmp::Reverse;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::budget::Budget;
use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::ideals::{colon, colon_zero, identity_required, radical, IdealLattice};
use crate::multiset::{distinct_count, for_each_index_multiset, for_each_multiset, multiset_count};
use crate::structure::HyperStructure;

/// Refutation data attached to a failing [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    /// A sorted element tuple.
    Tuple(Vec<Element>),
    /// A sorted tuple of indices into an [`IdealLattice`].
    Ideals(Vec<usize>),
    /// One refutation per candidate `s`, when no single one defeats them all.
    PerCandidate(Vec<(Element, Counterexample)>),
}

impl Counterexample {
    pub fn render(&self, a: &HyperStructure, lattice: Option<&IdealLattice>) -> String {
        match self {
            Counterexample::Tuple(t) => a.render_tuple(t),
            Counterexample::Ideals(ix) => {
                let parts: Vec<String> = ix
                    .iter()
                    .map(|i| match lattice {
                        Some(l) => a.render_set(l.get(*i)),
                        None => format!("#{i}"),
                    })
                    .collect();
                format!("({})", parts.join(","))
            }
            Counterexample::PerCandidate(list) => {
                let parts: Vec<String> =
                    list.iter().map(|(s, c)| format!("s={}: {}", a.element_name(*s), c.render(a, lattice))).collect();
                parts.join("; ")
            }
        }
    }
}

/// Outcome of a predicate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness_s: Option<Element>,
    pub counterexample: Option<Counterexample>,
    pub note: Option<String>,
}

pub const VACUOUS: &str = "vacuously true";

impl Verdict {
    pub fn yes() -> Self {
        Verdict { holds: true, witness_s: None, counterexample: None, note: None }
    }

    pub fn vacuous() -> Self {
        Verdict::yes().with_note(VACUOUS)
    }

    pub fn witnessed(s: Element) -> Self {
        Verdict { witness_s: Some(s), ..Verdict::yes() }
    }

    pub fn no(counterexample: Counterexample) -> Self {
        Verdict { holds: false, witness_s: None, counterexample: Some(counterexample), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_vacuous(&self) -> bool {
        self.holds && self.note.as_deref() == Some(VACUOUS)
    }

    pub fn render(&self, a: &HyperStructure, lattice: Option<&IdealLattice>) -> String {
        let mut s = self.holds.to_string();
        if let Some(w) = self.witness_s {
            s.push_str(&format!(" (s = {})", a.element_name(w)));
        }
        if let Some(c) = &self.counterexample {
            s.push_str(&format!(" counterexample {}", c.render(a, lattice)));
        }
        if let Some(n) = &self.note {
            s.push_str(&format!(" [{n}]"));
        }
        s
    }
}

/// Preferred counterexample: most distinct entries, then lexicographically
/// smallest.
fn best<'a, T: Ord + Clone + 'a>(tuples: impl IntoIterator<Item = &'a Vec<T>>) -> Option<Vec<T>> {
    tuples.into_iter().min_by_key(|t| (Reverse(distinct_count(t)), (*t).clone())).cloned()
}

fn tuple_cx(t: Vec<Element>) -> Counterexample {
    Counterexample::Tuple(t)
}

/// `g(s_1, ..., s_n) in S` for all `s_i in S`.
pub fn is_multiplicative(a: &HyperStructure, s: ElementSet) -> Verdict {
    if s.is_empty() {
        return Verdict::no(Counterexample::Tuple(vec![])).with_note("empty set");
    }
    let members = s.to_vec();
    let mut bad = None;
    let _ = for_each_multiset(&members, a.n(), |t| {
        if !s.contains(a.g(t)) {
            bad = Some(t.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    match bad {
        None => Verdict::yes(),
        Some(t) => Verdict::no(tuple_cx(t)),
    }
}

/// Antecedent tuples of the element-level predicates.
pub(crate) struct Scan {
    /// Some tuple satisfies the antecedent.
    pub any: bool,
    /// Antecedent tuples with no entry in `q`.
    pub open: Vec<Vec<Element>>,
}

/// Tuples with `g(t) in q` (and `g(t) != 0` when `weak`).
pub(crate) fn antecedent_scan(a: &HyperStructure, q: ElementSet, weak: bool) -> Scan {
    let carrier = a.element_vec();
    let mut scan = Scan { any: false, open: Vec::new() };
    let _ = for_each_multiset(&carrier, a.n(), |t| {
        let v = a.g(t);
        if q.contains(v) && !(weak && v == a.zero()) {
            scan.any = true;
            if t.iter().all(|x| !q.contains(*x)) {
                scan.open.push(t.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    scan
}

/// Tuples refuting primality (`weak = false`) or weak primality.
pub(crate) fn prime_scan(a: &HyperStructure, q: ElementSet, weak: bool) -> Vec<Vec<Element>> {
    antecedent_scan(a, q, weak).open
}

fn check_proper(a: &HyperStructure, q: ElementSet) -> Result<()> {
    if q == a.full_set() {
        Err(Error::NotProper)
    } else {
        Ok(())
    }
}

fn check_s(a: &HyperStructure, q: ElementSet, s: ElementSet) -> Result<()> {
    check_proper(a, q)?;
    if s.is_empty() {
        return Err(Error::NotMultiplicative("empty set".into()));
    }
    let meet = q.intersection(s);
    if !meet.is_empty() {
        return Err(Error::DisjointnessViolated(a.render_set(meet)));
    }
    Ok(())
}

fn element_budget(a: &HyperStructure, budget: &Budget) -> Result<()> {
    budget.check_evaluations(multiset_count(a.size(), a.n()), "element tuple scan")
}

pub fn is_prime(a: &HyperStructure, q: ElementSet) -> Result<Verdict> {
    check_proper(a, q)?;
    element_budget(a, &Budget::default())?;
    Ok(match best(&prime_scan(a, q, false)) {
        None => Verdict::yes(),
        Some(t) => Verdict::no(tuple_cx(t)),
    })
}

/// `0 != g(a_1..a_n) in Q` implies some `a_i in Q`. This is the `S = {1}`
/// case of weak S-primality and needs no identity to state.
pub fn is_weakly_prime(a: &HyperStructure, q: ElementSet) -> Result<Verdict> {
    check_proper(a, q)?;
    element_budget(a, &Budget::default())?;
    let scan = antecedent_scan(a, q, true);
    if !scan.any {
        return Ok(Verdict::vacuous());
    }
    Ok(match best(&scan.open) {
        None => Verdict::yes(),
        Some(t) => Verdict::no(tuple_cx(t)),
    })
}

/// For every tuple with `g(x_1..x_n) in Q` and every `x_i not in Q`, the
/// product with `x_i` replaced by `1` lies in `rad(Q)`.
pub fn is_primary(a: &HyperStructure, q: ElementSet, lattice: &IdealLattice) -> Result<Verdict> {
    check_proper(a, q)?;
    let one = a.one().ok_or_else(|| identity_required(a))?;
    element_budget(a, &Budget::default())?;
    let rad = radical(a, q, lattice);
    let carrier = a.element_vec();
    let mut failing = Vec::new();
    let _ = for_each_multiset(&carrier, a.n(), |t| {
        if q.contains(a.g(t)) {
            let mut sub = t.to_vec();
            let bad = (0..t.len()).any(|i| {
                if q.contains(t[i]) {
                    return false;
                }
                sub[i] = one;
                let v = a.g(&sub);
                sub[i] = t[i];
                !rad.contains(v)
            });
            if bad {
                failing.push(t.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(match best(&failing) {
        None => Verdict::yes(),
        Some(t) => Verdict::no(tuple_cx(t)),
    })
}

/// Shared search for an `s` certifying an S-flavoured predicate. `open`
/// holds the antecedent instances not already settled by absorption and
/// `fails(s, item)` reports whether `item` defeats `s`.
fn search_s<T: Ord + Clone>(
    s: ElementSet,
    open: &[Vec<T>],
    mut fails: impl FnMut(Element, &Vec<T>) -> Result<bool>,
    wrap: impl Fn(Vec<T>) -> Counterexample,
) -> Result<(Vec<Element>, Option<Counterexample>)> {
    if open.is_empty() {
        return Ok((s.to_vec(), None));
    }
    let mut associated = Vec::new();
    let mut per: Vec<(Element, Vec<&Vec<T>>)> = Vec::new();
    for cand in s {
        let mut defeated = Vec::new();
        for item in open {
            if fails(cand, item)? {
                defeated.push(item);
            }
        }
        if defeated.is_empty() {
            associated.push(cand);
        } else {
            per.push((cand, defeated));
        }
    }
    if !associated.is_empty() {
        return Ok((associated, None));
    }
    let common: Vec<&Vec<T>> = open.iter().filter(|item| per.iter().all(|(_, d)| d.contains(item))).collect();
    let cx = if let Some(t) = best(common) {
        wrap(t)
    } else {
        Counterexample::PerCandidate(per.into_iter().map(|(c, d)| (c, wrap(best(d).expect("non-empty")))).collect())
    };
    Ok((Vec::new(), Some(cx)))
}

fn s_flavoured(a: &HyperStructure, q: ElementSet, s: ElementSet, weak: bool) -> Result<Verdict> {
    check_s(a, q, s)?;
    element_budget(a, &Budget::default())?;
    let scan = antecedent_scan(a, q, weak);
    if !scan.any {
        return Ok(Verdict::vacuous());
    }
    let mut colons: Vec<Option<ElementSet>> = vec![None; a.size()];
    let (associated, cx) = search_s(
        s,
        &scan.open,
        |cand, t| {
            let c = match colons[cand.index()] {
                Some(c) => c,
                None => {
                    let c = colon(a, q, cand)?;
                    colons[cand.index()] = Some(c);
                    c
                }
            };
            Ok(t.iter().all(|x| !c.contains(*x)))
        },
        tuple_cx,
    )?;
    Ok(match (associated.first(), cx) {
        (Some(w), _) => Verdict::witnessed(*w),
        (None, Some(cx)) => Verdict::no(cx),
        (None, None) => unreachable!("search_s returns a witness or a counterexample"),
    })
}

/// Some `s in S` with: `g(a_1..a_n) in Q` implies `g(s, a_i, 1, ..., 1) in Q`
/// for some `i`.
pub fn is_s_prime(a: &HyperStructure, q: ElementSet, s: ElementSet) -> Result<Verdict> {
    s_flavoured(a, q, s, false)
}

/// As [`is_s_prime`], for tuples with `0 != g(a_1..a_n)`.
pub fn is_weakly_s_prime(a: &HyperStructure, q: ElementSet, s: ElementSet) -> Result<Verdict> {
    s_flavoured(a, q, s, true)
}

/// Ideal-level data for strong weak S-primality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Association {
    /// No ideal tuple satisfies the antecedent.
    pub vacuous: bool,
    /// Every `s` to which `Q` is associated, ascending.
    pub associated: Vec<Element>,
    pub counterexample: Option<Counterexample>,
}

/// Evaluates the ideal-level definition for every `s in S`.
pub fn association(
    a: &HyperStructure,
    q: ElementSet,
    s: ElementSet,
    lattice: &IdealLattice,
    budget: &Budget,
) -> Result<Association> {
    check_s(a, q, s)?;
    let tuples = multiset_count(lattice.len(), a.n());
    let per_tuple = (a.size() as u64).saturating_pow(a.n() as u32);
    budget.check_evaluations(tuples.saturating_mul(per_tuple), "ideal tuple scan")?;
    let ideals = lattice.ideals();
    let zero = a.zero_set();
    let mut any = false;
    let mut open: Vec<Vec<usize>> = Vec::new();
    let mut sets = vec![zero; a.n()];
    let _ = for_each_index_multiset(ideals.len(), a.n(), |ix| {
        for (slot, i) in sets.iter_mut().zip(ix) {
            *slot = ideals[*i];
        }
        let image = a.g_sets(&sets);
        if image != zero && image.is_subset(q) {
            any = true;
            if sets.iter().all(|x| !x.is_subset(q)) {
                open.push(ix.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    if !any {
        return Ok(Association { vacuous: true, associated: s.to_vec(), counterexample: None });
    }
    let mut colons: Vec<Option<ElementSet>> = vec![None; a.size()];
    let (associated, counterexample) = search_s(
        s,
        &open,
        |cand, ix| {
            let c = match colons[cand.index()] {
                Some(c) => c,
                None => {
                    let c = colon(a, q, cand)?;
                    colons[cand.index()] = Some(c);
                    c
                }
            };
            Ok(ix.iter().all(|i| !ideals[*i].is_subset(c)))
        },
        Counterexample::Ideals,
    )?;
    Ok(Association { vacuous: false, associated, counterexample })
}

/// Some `s in S` with: `0 != g(Q_1..Q_n) ⊆ Q` implies
/// `g(s, Q_i, 1, ..., 1) ⊆ Q` for some `i`, over all ideals in `lattice`.
pub fn is_strongly_weakly_s_prime(
    a: &HyperStructure,
    q: ElementSet,
    s: ElementSet,
    lattice: &IdealLattice,
) -> Result<Verdict> {
    is_strongly_weakly_s_prime_with(a, q, s, lattice, &Budget::default())
}

pub fn is_strongly_weakly_s_prime_with(
    a: &HyperStructure,
    q: ElementSet,
    s: ElementSet,
    lattice: &IdealLattice,
    budget: &Budget,
) -> Result<Verdict> {
    let assoc = association(a, q, s, lattice, budget)?;
    Ok(if assoc.vacuous {
        Verdict::vacuous()
    } else if let Some(w) = assoc.associated.first() {
        Verdict::witnessed(*w)
    } else {
        Verdict::no(assoc.counterexample.expect("failing association has a counterexample"))
    })
}

/// Some `s in S` such that every `a not in (Q : s)` has `(Q : a) ⊆ (Q : s)` or
/// `(Q : a) = (0 : a)`. A refutation lists the first failing `a` per `s`.
pub fn is_strongly_weakly_s_prime_colon(a: &HyperStructure, q: ElementSet, s: ElementSet) -> Result<Verdict> {
    check_s(a, q, s)?;
    let mut per = Vec::new();
    for cand in s {
        let cs = colon(a, q, cand)?;
        let mut bad = None;
        for x in cs.complement(a.size()) {
            let cx = colon(a, q, x)?;
            if !cx.is_subset(cs) && cx != colon_zero(a, x)? {
                bad = Some(x);
                break;
            }
        }
        match bad {
            None => return Ok(Verdict::witnessed(cand)),
            Some(x) => per.push((cand, x)),
        }
    }
    let first = per[0].1;
    Ok(if per.iter().all(|(_, x)| *x == first) {
        Verdict::no(Counterexample::Tuple(vec![first]))
    } else {
        Verdict::no(Counterexample::PerCandidate(
            per.into_iter().map(|(c, x)| (c, Counterexample::Tuple(vec![x]))).collect(),
        ))
    })
}

/// A decided verdict, or the reason the predicate could not be evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Decided(Verdict),
    Undecided(String),
}

impl Outcome {
    fn from_result(r: Result<Verdict>) -> Result<Outcome> {
        match r {
            Ok(v) => Ok(Outcome::Decided(v)),
            Err(e @ (Error::IdentityRequired(_) | Error::Capacity(_))) => Ok(Outcome::Undecided(e.to_string())),
            Err(e) => Err(e),
        }
    }

    pub fn holds(&self) -> Option<bool> {
        match self {
            Outcome::Decided(v) => Some(v.holds),
            Outcome::Undecided(_) => None,
        }
    }

    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            Outcome::Decided(v) => Some(v),
            Outcome::Undecided(_) => None,
        }
    }

    pub fn render(&self, a: &HyperStructure, lattice: Option<&IdealLattice>) -> String {
        match self {
            Outcome::Decided(v) => v.render(a, lattice),
            Outcome::Undecided(why) => format!("undecided [{why}]"),
        }
    }
}

/// Predicate names accepted by [`Classification::get`].
pub const PREDICATES: [&str; 7] = [
    "prime",
    "primary",
    "weakly-prime",
    "s-prime",
    "weakly-s-prime",
    "strongly-weakly-s-prime",
    "strongly-weakly-s-prime-colon",
];

/// Verdicts of every predicate on one `(A, Q, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub prime: Outcome,
    pub primary: Outcome,
    pub weakly_prime: Outcome,
    pub s_prime: Outcome,
    pub weakly_s_prime: Outcome,
    pub strongly_weakly_s_prime: Outcome,
    pub strongly_weakly_s_prime_colon: Outcome,
}

impl Classification {
    pub fn get(&self, name: &str) -> Option<&Outcome> {
        Some(match name {
            "prime" => &self.prime,
            "primary" => &self.primary,
            "weakly-prime" => &self.weakly_prime,
            "s-prime" => &self.s_prime,
            "weakly-s-prime" => &self.weakly_s_prime,
            "strongly-weakly-s-prime" => &self.strongly_weakly_s_prime,
            "strongly-weakly-s-prime-colon" => &self.strongly_weakly_s_prime_colon,
            _ => return None,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&'static str, &Outcome)> {
        PREDICATES.iter().map(move |p| (*p, self.get(p).expect("known predicate")))
    }

    /// Implications among decided verdicts that this record breaks.
    pub fn chain_violations(&self) -> Vec<String> {
        let pairs = [
            ("prime", "s-prime"),
            ("s-prime", "weakly-s-prime"),
            ("prime", "weakly-s-prime"),
            ("strongly-weakly-s-prime", "weakly-s-prime"),
        ];
        pairs
            .iter()
            .filter(|(p, c)| {
                self.get(p).and_then(Outcome::holds) == Some(true)
                    && self.get(c).and_then(Outcome::holds) == Some(false)
            })
            .map(|(p, c)| format!("{p} holds but {c} fails"))
            .collect()
    }
}

pub fn classify(a: &HyperStructure, q: ElementSet, s: ElementSet, lattice: &IdealLattice) -> Result<Classification> {
    classify_with(a, q, s, lattice, &Budget::default())
}

/// Evaluates every predicate. Missing identities and budget overruns become
/// [`Outcome::Undecided`]; only precondition failures are errors.
pub fn classify_with(
    a: &HyperStructure,
    q: ElementSet,
    s: ElementSet,
    lattice: &IdealLattice,
    budget: &Budget,
) -> Result<Classification> {
    check_s(a, q, s)?;
    Ok(Classification {
        prime: Outcome::from_result(is_prime(a, q))?,
        primary: Outcome::from_result(is_primary(a, q, lattice))?,
        weakly_prime: Outcome::from_result(is_weakly_prime(a, q))?,
        s_prime: Outcome::from_result(is_s_prime(a, q, s))?,
        weakly_s_prime: Outcome::from_result(is_weakly_s_prime(a, q, s))?,
        strongly_weakly_s_prime: Outcome::from_result(is_strongly_weakly_s_prime_with(a, q, s, lattice, budget))?,
        strongly_weakly_s_prime_colon: Outcome::from_result(is_strongly_weakly_s_prime_colon(a, q, s))?,
    })
}

/// All non-empty multiplicative subsets with at most `max_size` elements,
/// ordered by size then mask.
pub fn multiplicative_sets(a: &HyperStructure, max_size: usize) -> Vec<ElementSet> {
    let carrier = a.element_vec();
    let mut out = Vec::new();
    for k in 1..=max_size.min(a.size()) {
        let mut level = Vec::new();
        let _ = for_each_index_multiset(carrier.len(), k, |ix| {
            if ix.windows(2).all(|w| w[0] < w[1]) {
                let set: ElementSet = ix.iter().map(|i| carrier[*i]).collect();
                if is_multiplicative(a, set).holds {
                    level.push(set);
                }
            }
            ControlFlow::Continue(())
        });
        level.sort_by_key(|s| s.bits());
        out.extend(level);
    }
    out
}
