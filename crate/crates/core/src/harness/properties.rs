//! Evaluation of the individual theorem properties on one instance.

use std::ops::ControlFlow;

use serde_json::{json, Map, Value};

use super::context::{compose, is_domain, is_hyperfield, rectangle, Ctx};
use super::PropertyId;
use crate::constructions::preimage_ideal;
use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::ideals::{colon, colon_zero, is_hyperideal, scale, scale_set, IdealLattice};
use crate::multiset::{for_each_index_multiset, for_each_multiset};
use crate::predicates::{
    association, is_multiplicative, is_prime, is_s_prime, is_strongly_weakly_s_prime_colon,
    is_strongly_weakly_s_prime_with, is_weakly_prime, is_weakly_s_prime, Verdict,
};
use crate::structure::HyperStructure;

pub(crate) enum Eval {
    Verified(Value),
    Counterexample(Value),
    Skipped(String),
}

type Step<T> = std::result::Result<T, Eval>;

fn skip<T>(why: impl Into<String>) -> Step<T> {
    Err(Eval::Skipped(why.into()))
}

fn require(cond: bool, why: &str) -> Step<()> {
    if cond {
        Ok(())
    } else {
        skip(format!("hypothesis fails: {why}"))
    }
}

fn eval<T>(r: Result<T>) -> Step<T> {
    r.map_err(|e| Eval::Skipped(e.to_string()))
}

/// Truth value of a predicate. Failed preconditions count as false;
/// missing identities and budget overruns skip.
fn truth(r: Result<Verdict>) -> Step<bool> {
    match r {
        Ok(v) => Ok(v.holds),
        Err(e @ (Error::IdentityRequired(_) | Error::Capacity(_))) => skip(e.to_string()),
        Err(_) => Ok(false),
    }
}

fn names(a: &HyperStructure, set: ElementSet) -> Value {
    json!(a.set_names(set))
}

fn tuple(a: &HyperStructure, t: &[Element]) -> Value {
    json!(t.iter().map(|x| a.element_name(*x)).collect::<Vec<_>>())
}

fn sets(a: &HyperStructure, list: &[ElementSet]) -> Value {
    Value::Array(list.iter().map(|q| names(a, *q)).collect())
}

fn with(mut base: Value, key: &str, value: Value) -> Value {
    if let Value::Object(map) = &mut base {
        map.insert(key.to_string(), value);
    }
    base
}

/// Turns the conclusion verdict into a report.
fn conclude(a: &HyperStructure, lattice: Option<&IdealLattice>, r: Result<Verdict>, base: Value) -> Step<Eval> {
    match r {
        Ok(v) if v.holds => Ok(Eval::Verified(match v.witness_s {
            Some(w) => with(base, "s", json!(a.element_name(w))),
            None => base,
        })),
        Ok(v) => {
            let cx = v.counterexample.map(|c| c.render(a, lattice)).unwrap_or_default();
            Ok(Eval::Counterexample(with(base, "refutation", json!(cx))))
        }
        Err(e @ (Error::IdentityRequired(_) | Error::Capacity(_))) => skip(e.to_string()),
        Err(e) => Ok(Eval::Counterexample(with(base, "refutation", json!(e.to_string())))),
    }
}

fn lattice(c: &Ctx) -> Step<&IdealLattice> {
    c.lattice().map_err(|e| Eval::Skipped(format!("no ideal lattice: {e}")))
}

fn strongly(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<bool> {
    truth(is_strongly_weakly_s_prime_with(c.a(), q, s, lattice(c)?, &c.config.budget))
}

fn g_power(a: &HyperStructure, head: ElementSet, q: ElementSet) -> ElementSet {
    let mut args = vec![q; a.n()];
    args[0] = head;
    a.g_sets(&args)
}

fn one_set(a: &HyperStructure, s: ElementSet) -> Step<()> {
    match a.one() {
        Some(one) if s == ElementSet::singleton(one) => Ok(()),
        Some(_) => skip("applies to S = {1} only"),
        None => skip("applies to S = {1}; the structure has no identity"),
    }
}

/// Q a proper hyperideal, S multiplicative and disjoint from Q.
fn standard_shape(a: &HyperStructure, q: ElementSet, s: ElementSet) -> Step<()> {
    let ideal = is_hyperideal(a, q);
    if !ideal.holds {
        return skip(format!("Q is not a hyperideal: {}", ideal.note.unwrap_or_default()));
    }
    if q == a.full_set() {
        return skip("Q is not proper");
    }
    if !is_multiplicative(a, s).holds {
        return skip("S is not multiplicative");
    }
    if !q.is_disjoint(s) {
        return skip(format!("S meets Q in {}", a.render_set(q.intersection(s))));
    }
    Ok(())
}

pub(crate) fn evaluate(id: PropertyId, c: &Ctx, q: Option<ElementSet>, s: Option<ElementSet>) -> Eval {
    let run = || -> Step<Eval> {
        if !c.valid() {
            return skip(format!("{} fails the Krasner axioms", c.name));
        }
        let a = c.a();
        match id {
            PropertyId::P4 => {
                let s = s.ok_or_else(|| Eval::Skipped("instance needs S".into()))?;
                if !is_multiplicative(a, s).holds {
                    return skip("S is not multiplicative");
                }
                p4(c, s)
            }
            PropertyId::P17 | PropertyId::P18 => {
                let (q, s) = q.zip(s).ok_or_else(|| Eval::Skipped("instance needs Q and S".into()))?;
                if !is_hyperideal(a, q).holds || !is_multiplicative(a, s).holds {
                    return skip("Q is not a hyperideal or S is not multiplicative");
                }
                product_equivalence(c, q, s, if id == PropertyId::P17 { 2 } else { 3 })
            }
            _ => {
                let (q, s) = q.zip(s).ok_or_else(|| Eval::Skipped("instance needs Q and S".into()))?;
                standard_shape(a, q, s)?;
                match id {
                    PropertyId::P1 => p1(c, q, s),
                    PropertyId::P2 => p2(c, q, s),
                    PropertyId::P3 => p3(c, q, s),
                    PropertyId::P5 => p5(c, q, s),
                    PropertyId::P6 => p6(c, q, s),
                    PropertyId::P7 => p7(c, q, s),
                    PropertyId::P8 => p8(c, q, s),
                    PropertyId::P9 => p9(c, q, s),
                    PropertyId::P10 => p10(c, q, s),
                    PropertyId::P11 => p11(c, q, s),
                    PropertyId::P12 => p12(c, q, s),
                    PropertyId::P13 => p13(c, q, s),
                    PropertyId::P14 => p14(c, q, s),
                    PropertyId::P15 => p15(c, q, s),
                    PropertyId::P16 => p16(c, q, s),
                    PropertyId::P19 => p19(c, q, s),
                    PropertyId::P4 | PropertyId::P17 | PropertyId::P18 => unreachable!(),
                }
            }
        }
    };
    match run() {
        Ok(e) | Err(e) => e,
    }
}

fn p1(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let l = lattice(c)?;
    require(truth(is_weakly_s_prime(a, q, s))?, "Q is not weakly S-prime")?;
    let meeting: Vec<ElementSet> = l.ideals().iter().copied().filter(|j| !j.is_disjoint(s)).collect();
    let (mut checked, mut not_ideal, mut undecided) = (0u64, 0u64, 0u64);
    let mut failure = None;
    let _ = for_each_index_multiset(meeting.len(), a.n() - 1, |ix| {
        let mut args: Vec<ElementSet> = ix.iter().map(|i| meeting[*i]).collect();
        args.push(q);
        let image = a.g_sets(&args);
        if !is_hyperideal(a, image).holds {
            not_ideal += 1;
            return ControlFlow::Continue(());
        }
        match truth(is_weakly_s_prime(a, image, s)) {
            Ok(true) => checked += 1,
            Ok(false) => {
                failure = Some((args, image));
                return ControlFlow::Break(());
            }
            Err(_) => undecided += 1,
        }
        ControlFlow::Continue(())
    });
    if let Some((args, image)) = failure {
        let cert = json!({"ideals": sets(a, &args), "image": names(a, image)});
        return conclude(a, Some(l), is_weakly_s_prime(a, image, s), cert);
    }
    require(checked > 0, "no ideal tuple meeting S has a decidable hyperideal image")?;
    Ok(Eval::Verified(json!({"images": checked, "non_ideal_images": not_ideal, "undecided": undecided})))
}

fn p2(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let l = lattice(c)?;
    require(truth(is_weakly_s_prime(a, q, s))?, "Q is not weakly S-prime")?;
    let mut checked = 0;
    for p in l.ideals().iter().copied().filter(|p| !p.is_disjoint(s)) {
        let meet = q.intersection(p);
        if !truth(is_weakly_s_prime(a, meet, s))? {
            return conclude(a, Some(l), is_weakly_s_prime(a, meet, s), json!({"P": names(a, p)}));
        }
        checked += 1;
    }
    Ok(Eval::Verified(json!({"ideals": checked})))
}

fn p3(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let mut witness = None;
    for x in s {
        let cx = eval(colon(a, q, x))?;
        if cx != a.full_set() && truth(is_weakly_prime(a, cx))? {
            witness = Some((x, cx));
            break;
        }
    }
    let Some((x, cx)) = witness else {
        return skip("hypothesis fails: no s in S with (Q:s) proper and weakly prime");
    };
    let cert = json!({"colon_s": a.element_name(x), "colon": names(a, cx)});
    conclude(a, None, is_weakly_s_prime(a, q, s), cert)
}

fn p4(c: &Ctx, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    require(!s.contains(a.zero()), "0 lies in S")?;
    let l = lattice(c)?;
    let domain = is_domain(a);
    let (mut lhs_break, mut rhs_break) = (None, None);
    for p in l.proper(a).into_iter().filter(|p| p.is_disjoint(s)) {
        let prime = truth(is_prime(a, p))?;
        if !prime && lhs_break.is_none() && truth(is_s_prime(a, p, s))? {
            lhs_break = Some(p);
        }
        if !prime && rhs_break.is_none() && truth(is_weakly_s_prime(a, p, s))? {
            rhs_break = Some(p);
        }
    }
    let lhs = domain && lhs_break.is_none();
    let rhs = rhs_break.is_none();
    let mut cert =
        json!({"domain": domain, "s_prime_implies_prime": lhs_break.is_none(), "weakly_s_prime_implies_prime": rhs});
    if let Some(p) = rhs_break {
        cert = with(cert, "weakly_s_prime_not_prime", names(a, p));
    }
    if let Some(p) = lhs_break {
        cert = with(cert, "s_prime_not_prime", names(a, p));
    }
    Ok(if lhs == rhs { Eval::Verified(cert) } else { Eval::Counterexample(cert) })
}

fn p5(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let n = a.n();
    let reaches = |t: ElementSet| {
        t.iter().all(|x| {
            t.iter().any(|y| {
                let mut args = vec![x; n - 1];
                args.push(y);
                s.contains(a.g(&args))
            })
        })
    };
    let mut used = Vec::new();
    for t in c.mult.iter().copied() {
        if s.is_subset(t)
            && s != t
            && t.is_disjoint(q)
            && reaches(t)
            && truth(is_weakly_s_prime(a, q, t)).unwrap_or(false)
        {
            used.push(t);
        }
    }
    require(!used.is_empty(), "no T containing S with the transfer condition and Q weakly T-prime")?;
    conclude(a, None, is_weakly_s_prime(a, q, s), json!({"T": sets(a, &used)}))
}

fn p6(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let l = lattice(c)?;
    let assoc = eval(association(a, q, s, l, &c.config.budget))?;
    require(!assoc.associated.is_empty(), "Q is not strongly weakly S-prime")?;
    let zero = a.zero();
    eval(scale(a, zero, zero))?;
    let carrier = a.element_vec();
    let mut tuples: Vec<(Element, Vec<Element>)> = Vec::new();
    for &s0 in &assoc.associated {
        let _ = for_each_multiset(&carrier, a.n(), |t| {
            if a.g(t) == zero && t.iter().all(|x| !q.contains(scale(a, s0, *x).expect("identity checked"))) {
                tuples.push((s0, t.to_vec()));
            }
            ControlFlow::Continue(())
        });
    }
    require(!tuples.is_empty(), "no zero-product tuple with every g(s,a_i,1) outside Q")?;
    let n = a.n();
    for (s0, t) in &tuples {
        for mask in 1u32..(1 << n) {
            let args: Vec<ElementSet> =
                (0..n).map(|i| if mask >> i & 1 == 1 { q } else { ElementSet::singleton(t[i]) }).collect();
            let image = a.g_sets(&args);
            if image != a.zero_set() {
                let positions: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                return Ok(Eval::Counterexample(json!({
                    "s": a.element_name(*s0),
                    "tuple": tuple(a, t),
                    "positions": positions,
                    "image": names(a, image),
                })));
            }
        }
    }
    let first = &tuples[0];
    Ok(Eval::Verified(json!({
        "tuples": tuples.len(),
        "first": {"s": a.element_name(first.0), "tuple": tuple(a, &first.1)},
    })))
}

fn square_zero(c: &Ctx, q: ElementSet) -> Eval {
    let a = c.a();
    let image = a.g_sets(&vec![q; a.n()]);
    let cert = json!({"product": names(a, image)});
    if image == a.zero_set() {
        Eval::Verified(cert)
    } else {
        Eval::Counterexample(cert)
    }
}

fn p7(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    require(strongly(c, q, s)?, "Q is not strongly weakly S-prime")?;
    require(!truth(is_s_prime(c.a(), q, s))?, "Q is S-prime")?;
    Ok(square_zero(c, q))
}

fn p8(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    require(strongly(c, q, s)?, "Q is not strongly weakly S-prime")?;
    let rad0 = c.rad0().map_err(Eval::Skipped)?;
    if q.is_subset(rad0) {
        return Ok(Eval::Verified(json!({"branch": "Q in rad(0)", "rad0": names(a, rad0)})));
    }
    for x in s {
        if eval(scale_set(a, x, rad0))?.is_subset(q) {
            return Ok(Eval::Verified(
                json!({"branch": "g(s,rad(0),1) in Q", "s": a.element_name(x), "rad0": names(a, rad0)}),
            ));
        }
    }
    Ok(Eval::Counterexample(json!({"rad0": names(a, rad0)})))
}

fn p9(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    one_set(c.a(), s)?;
    require(strongly(c, q, s)?, "Q is not strongly weakly prime")?;
    require(!truth(is_prime(c.a(), q))?, "Q is prime")?;
    Ok(square_zero(c, q))
}

fn p10(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let definitional = strongly(c, q, s)?;
    let by_colon = truth(is_strongly_weakly_s_prime_colon(a, q, s))?;
    let cert = json!({"definitional": definitional, "colon": by_colon});
    Ok(if definitional == by_colon { Eval::Verified(cert) } else { Eval::Counterexample(cert) })
}

fn p11(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    one_set(a, s)?;
    let definitional = strongly(c, q, s)?;
    let mut failing = None;
    for x in q.complement(a.size()) {
        let cx = eval(colon(a, q, x))?;
        if cx != q && cx != eval(colon_zero(a, x))? {
            failing = Some(x);
            break;
        }
    }
    let mut cert = json!({"definitional": definitional, "colon": failing.is_none()});
    if let Some(x) = failing {
        cert = with(cert, "a", json!(a.element_name(x)));
    }
    Ok(if definitional == failing.is_none() { Eval::Verified(cert) } else { Eval::Counterexample(cert) })
}

fn p12(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    require(strongly(c, q, s)?, "Q is not strongly weakly S-prime")?;
    require(!truth(is_s_prime(a, q, s))?, "Q is S-prime")?;
    let rad0 = c.rad0().map_err(Eval::Skipped)?;
    for x in s {
        let image = g_power(a, eval(scale_set(a, x, rad0))?, q);
        if image == a.zero_set() {
            return Ok(Eval::Verified(json!({"s": a.element_name(x), "rad0": names(a, rad0)})));
        }
    }
    Ok(Eval::Counterexample(json!({"rad0": names(a, rad0)})))
}

fn p13(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    let l = lattice(c)?;
    let qualifies = |x: ElementSet| -> Step<bool> { Ok(strongly(c, x, s)? && !truth(is_s_prime(a, x, s))?) };
    require(qualifies(q)?, "Q is not strongly weakly S-prime without being S-prime")?;
    let mut partners = Vec::new();
    for q2 in l.proper(a).into_iter().filter(|x| x.is_disjoint(s)) {
        if qualifies(q2).unwrap_or(false) {
            partners.push(q2);
        }
    }
    for q2 in &partners {
        let mut found = None;
        for x in s {
            let left = g_power(a, eval(scale_set(a, x, q))?, *q2);
            let right = g_power(a, eval(scale_set(a, x, *q2))?, q);
            if left == a.zero_set() && right == a.zero_set() {
                found = Some(x);
                break;
            }
        }
        if found.is_none() {
            return Ok(Eval::Counterexample(json!({"Q2": names(a, *q2)})));
        }
    }
    Ok(Eval::Verified(json!({"partners": sets(a, &partners)})))
}

fn p14(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    one_set(a, s)?;
    require(strongly(c, q, s)?, "Q is not strongly weakly prime")?;
    require(!truth(is_prime(a, q))?, "Q is prime")?;
    let rad0 = c.rad0().map_err(Eval::Skipped)?;
    let image = g_power(a, rad0, q);
    let cert = json!({"rad0": names(a, rad0), "product": names(a, image)});
    Ok(if image == a.zero_set() { Eval::Verified(cert) } else { Eval::Counterexample(cert) })
}

fn p15(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    require(truth(is_weakly_s_prime(a, q, s))?, "Q is not weakly S-prime")?;
    let mut checked = Vec::new();
    for e in c.embeddings() {
        let s1 = preimage_ideal(&e.map, s);
        if s1.is_empty() || e.map.image(s1) != s {
            continue;
        }
        let q1 = preimage_ideal(&e.map, q);
        let r = is_weakly_s_prime(&e.source, q1, s1);
        match truth(r.clone()) {
            Ok(true) => checked.push(json!(e.label)),
            Ok(false) => {
                let cert = json!({"map": e.label, "preimage": names(&e.source, q1), "S1": names(&e.source, s1)});
                return conclude(&e.source, None, r, cert);
            }
            Err(_) => {}
        }
    }
    require(!checked.is_empty(), "no monomorphism whose image contains S")?;
    Ok(Eval::Verified(json!({"maps": checked})))
}

fn p16(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    require(truth(is_weakly_s_prime(a, q, s))?, "Q is not weakly S-prime")?;
    let mut checked = Vec::new();
    for &r in c.subrings().iter().filter(|r| s.is_subset(**r)) {
        let (sub, inclusion) = eval(crate::constructions::substructure(a, r))?;
        let (q1, s1) = (preimage_ideal(&inclusion, q), preimage_ideal(&inclusion, s));
        let v = is_weakly_s_prime(&sub, q1, s1);
        match truth(v.clone()) {
            Ok(true) => checked.push(r),
            Ok(false) => return conclude(&sub, None, v, json!({"A1": names(a, r)})),
            Err(_) => {}
        }
    }
    require(!checked.is_empty(), "no subhyperring containing S where the conclusion is decidable")?;
    Ok(Eval::Verified(json!({"subhyperrings": sets(a, &checked)})))
}

fn p19(c: &Ctx, q: ElementSet, s: ElementSet) -> Step<Eval> {
    let a = c.a();
    require(c.factors.len() == 2, "not a product of two factors")?;
    require(c.factors.iter().all(|f| is_hyperfield(f.a())), "a factor is not a hyperfield")?;
    let sizes: Vec<usize> = c.factors.iter().map(|f| f.a().size()).collect();
    require(rectangle(s, &sizes).is_some(), "S is not a product S1 x S2")?;
    conclude(a, None, is_weakly_s_prime(a, q, s), json!({}))
}

/// Shared body of the two- and three-factor product equivalences.
fn product_equivalence(c: &Ctx, q: ElementSet, s: ElementSet, arity: usize) -> Step<Eval> {
    let a = c.a();
    require(c.factors.len() == arity, &format!("not a product of {arity} factors"))?;
    let sizes: Vec<usize> = c.factors.iter().map(|f| f.a().size()).collect();
    let qs = rectangle(q, &sizes).ok_or_else(|| Eval::Skipped("Q is not a product of factor sets".into()))?;
    let ss = rectangle(s, &sizes).ok_or_else(|| Eval::Skipped("S is not a product of factor sets".into()))?;
    debug_assert_eq!(compose(&qs, &sizes), q);
    for (f, qi) in c.factors.iter().zip(&qs) {
        require(*qi != f.a().zero_set(), "the product theorem requires nonzero factor hyperideals")?;
        require(f.a().one().is_some(), "a factor has no identity")?;
    }
    let weakly = truth(is_weakly_s_prime(a, q, s))?;
    let mut factor = None;
    for (i, f) in c.factors.iter().enumerate() {
        let others_meet = (0..arity).filter(|j| *j != i).all(|j| !qs[j].is_disjoint(ss[j]));
        if others_meet && truth(is_s_prime(f.a(), qs[i], ss[i]))? {
            factor = Some(i);
            break;
        }
    }
    let s_prime = truth(is_s_prime(a, q, s))?;
    let mut cert = Map::new();
    cert.insert("weakly_s_prime".into(), json!(weakly));
    cert.insert("factor_s_prime".into(), json!(factor.is_some()));
    cert.insert("s_prime".into(), json!(s_prime));
    if let Some(i) = factor {
        cert.insert("factor".into(), json!(i + 1));
    }
    let cert = Value::Object(cert);
    Ok(if weakly == factor.is_some() && weakly == s_prime { Eval::Verified(cert) } else { Eval::Counterexample(cert) })
}
