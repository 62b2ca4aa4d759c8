//! Fixtures, cartesian products, homomorphisms and substructures.

use std::ops::ControlFlow;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::multiset::for_each_multiset;
use crate::structure::HyperStructure;

/// A named structure together with an optional designated `(Q, S)` pair.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub structure: HyperStructure,
    /// `(Q, S)` singled out by the source of the fixture, if any.
    pub designated: Option<(ElementSet, ElementSet)>,
    /// False for fixtures encoded from tables known to carry defects.
    pub canonical: bool,
    /// Names of the factors when the fixture is a cartesian product.
    pub factors: Vec<String>,
}

/// Names recognised by [`fixture`] besides `ring:Zk` and `*`-products.
pub const PAPER_FIXTURES: [&str; 3] = ["paper-2-4", "paper-3-3", "paper-3-3-s1"];

/// Resolves a fixture name.
///
/// Accepted forms: `paper-2-4`, `paper-3-3`, `paper-3-3-s1`, `ring:Zk` for
/// `1 <= k <= 64`, and products `A*B*...` of any of these (left-nested, so
/// `A*B*C` is `(A*B)*C`). Product element names join factor names with `:`.
pub fn fixture(name: &str) -> Result<Fixture> {
    let name = name.trim();
    if let Some((left, right)) = name.rsplit_once('*') {
        let a = fixture(left)?;
        let b = fixture(right)?;
        let structure = product(&a.structure, &b.structure)?.with_name(name);
        let mut factors = if a.factors.is_empty() { vec![left.to_string()] } else { a.factors };
        factors.push(right.to_string());
        return Ok(Fixture { structure, designated: None, canonical: a.canonical && b.canonical, factors });
    }
    match name {
        "paper-2-4" => Ok(Fixture {
            structure: paper_2_4(),
            designated: Some((crate::set_of(&[0]), crate::set_of(&[2, 3]))),
            canonical: true,
            factors: Vec::new(),
        }),
        "paper-3-3" => Ok(Fixture {
            structure: paper_3_3(),
            designated: Some((crate::set_of(&[0, 2]), crate::set_of(&[1, 2]))),
            canonical: false,
            factors: Vec::new(),
        }),
        "paper-3-3-s1" => Ok(Fixture {
            structure: paper_3_3().with_name("paper-3-3-s1"),
            designated: Some((crate::set_of(&[0, 2]), crate::set_of(&[1]))),
            canonical: false,
            factors: Vec::new(),
        }),
        _ => {
            let k = name
                .strip_prefix("ring:Z")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|k| (1..=64).contains(k))
                .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
            Ok(Fixture { structure: ring_zk(k), designated: None, canonical: true, factors: Vec::new() })
        }
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn e(i: usize) -> Element {
    Element::new(i)
}

/// The Krasner (2,4)-hyperring on `{0,1,2,3}` with `I = {0,1}`, `J = {2,3}`.
fn paper_2_4() -> HyperStructure {
    const I: [usize; 2] = [0, 1];
    const J: [usize; 2] = [2, 3];
    // upper triangle of the printed addition table
    let add = |a: usize, b: usize| -> ElementSet {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (0, x) => crate::set_of(&[x]),
            (1, 1) => crate::set_of(&I),
            (1, 2) => crate::set_of(&[3]),
            (1, 3) => crate::set_of(&J),
            (2, 2) => crate::set_of(&[0]),
            (2, 3) => crate::set_of(&[1]),
            (3, 3) => crate::set_of(&I),
            _ => unreachable!(),
        }
    };
    HyperStructure::from_fn(
        "paper-2-4",
        2,
        4,
        names(4),
        e(0),
        None,
        |t| add(t[0].index(), t[1].index()),
        |t| if t.iter().all(|x| J.contains(&x.index())) { e(2) } else { e(0) },
    )
    .expect("paper-2-4 tables are total")
}

/// The (3,3) structure on `{0,1,2}`, encoded exactly as printed.
fn paper_3_3() -> HyperStructure {
    let full = crate::set_of(&[0, 1, 2]);
    let f = |t: &[Element]| -> ElementSet {
        let key: Vec<usize> = t.iter().map(|x| x.index()).collect();
        match key.as_slice() {
            [0, 0, 0] => crate::set_of(&[0]),
            [0, 0, 1] => crate::set_of(&[1]),
            [0, 0, 2] => crate::set_of(&[2]),
            [0, 1, 1] => crate::set_of(&[1]),
            [0, 2, 2] => crate::set_of(&[2]),
            [1, 1, 1] => crate::set_of(&[1]),
            [2, 2, 2] => crate::set_of(&[2]),
            [1, 1, 2] | [1, 2, 2] | [0, 1, 2] => full,
            _ => unreachable!("all ten multisets are listed"),
        }
    };
    let g = |t: &[Element]| -> Element {
        let key: Vec<usize> = t.iter().map(|x| x.index()).collect();
        match key.as_slice() {
            [0, _, _] => e(0),
            [1, 1, 1] => e(1),
            _ => e(2),
        }
    };
    HyperStructure::from_fn("paper-3-3", 3, 3, names(3), e(0), Some(e(1)), f, g).expect("paper-3-3 tables are total")
}

/// `Z/kZ` as a Krasner (2,2)-hyperring with singleton sums.
pub fn ring_zk(k: usize) -> HyperStructure {
    HyperStructure::from_fn(
        format!("ring:Z{k}"),
        2,
        2,
        names(k),
        e(0),
        Some(e(1 % k)),
        |t| ElementSet::singleton(e((t[0].index() + t[1].index()) % k)),
        |t| e((t[0].index() * t[1].index()) % k),
    )
    .expect("ring tables are total")
}

/// Index of `(a, b)` in `product(A1, A2)` (row-major).
pub fn pair_index(a: Element, b: Element, right_size: usize) -> Element {
    Element::new(a.index() * right_size + b.index())
}

/// Components of a product element.
pub fn split_pair(x: Element, right_size: usize) -> (Element, Element) {
    (Element::new(x.index() / right_size), Element::new(x.index() % right_size))
}

/// Cartesian product `A1 x A2` with componentwise operations.
pub fn product(a1: &HyperStructure, a2: &HyperStructure) -> Result<HyperStructure> {
    if a1.m() != a2.m() || a1.n() != a2.n() {
        return Err(Error::InvalidStructure(format!(
            "factor arities differ: ({},{}) vs ({},{})",
            a1.m(),
            a1.n(),
            a2.m(),
            a2.n()
        )));
    }
    let size = a1.size() * a2.size();
    if size > crate::element::MAX_CARRIER {
        return Err(Error::Capacity(format!("product carrier of {size} elements")));
    }
    let r = a2.size();
    let mut names = Vec::with_capacity(size);
    for x in a1.names() {
        for y in a2.names() {
            names.push(format!("{x}:{y}"));
        }
    }
    let halves = |t: &[Element]| -> (Vec<Element>, Vec<Element>) { t.iter().map(|x| split_pair(*x, r)).unzip() };
    let f = |t: &[Element]| -> ElementSet {
        let (l, rr) = halves(t);
        let fy = a2.f(&rr);
        let mut out = ElementSet::EMPTY;
        for x in a1.f(&l) {
            for y in fy {
                out.insert(pair_index(x, y, r));
            }
        }
        out
    };
    let g = |t: &[Element]| -> Element {
        let (l, rr) = halves(t);
        pair_index(a1.g(&l), a2.g(&rr), r)
    };
    let one = match (a1.one(), a2.one()) {
        (Some(x), Some(y)) => Some(pair_index(x, y, r)),
        _ => None,
    };
    HyperStructure::from_fn(
        format!("{}*{}", a1.name(), a2.name()),
        a1.m(),
        a1.n(),
        names,
        pair_index(a1.zero(), a2.zero(), r),
        one,
        f,
        g,
    )
}

/// `Q1 x Q2` inside `A1 x A2`, where `right_size = |A2|`.
pub fn product_set(q1: ElementSet, q2: ElementSet, right_size: usize) -> ElementSet {
    let mut out = ElementSet::EMPTY;
    for a in q1 {
        for b in q2 {
            out.insert(pair_index(a, b, right_size));
        }
    }
    out
}

/// Hyperideal `Q1 x Q2` of the product.
pub fn product_ideal(q1: ElementSet, q2: ElementSet, a2: &HyperStructure) -> ElementSet {
    product_set(q1, q2, a2.size())
}

/// Multiplicative set `S1 x S2` of the product.
pub fn product_mult_set(s1: ElementSet, s2: ElementSet, a2: &HyperStructure) -> ElementSet {
    product_set(s1, s2, a2.size())
}

/// A validated homomorphism between two finite structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: String,
    pub target: String,
    map: Vec<Element>,
    injective: bool,
    identity_complete: bool,
}

impl Homomorphism {
    /// Checks conditions (i) and (ii) over every multiset and, when both sides
    /// have an identity, `h(1) = 1`.
    pub fn new(source: &HyperStructure, target: &HyperStructure, map: Vec<Element>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::InvalidStructure("map is not total on the source".into()));
        }
        if map.iter().any(|x| x.index() >= target.size()) {
            return Err(Error::InvalidStructure("map leaves the target carrier".into()));
        }
        if source.m() != target.m() || source.n() != target.n() {
            return Err(Error::ArityMismatch { expected: source.n(), got: target.n() });
        }
        let carrier = source.element_vec();
        let h = |x: Element| map[x.index()];
        let mut bad = None;
        let _ = for_each_multiset(&carrier, source.m(), |t| {
            let lhs: ElementSet = source.f(t).iter().map(h).collect();
            let image: Vec<Element> = t.iter().map(|x| h(*x)).collect();
            if lhs != target.f(&image) {
                bad = Some(format!("f condition fails at {}", source.render_tuple(t)));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if bad.is_none() {
            let _ = for_each_multiset(&carrier, source.n(), |t| {
                let image: Vec<Element> = t.iter().map(|x| h(*x)).collect();
                if h(source.g(t)) != target.g(&image) {
                    bad = Some(format!("g condition fails at {}", source.render_tuple(t)));
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
        }
        if let Some(msg) = bad {
            return Err(Error::InvalidStructure(msg));
        }
        let identity_complete = match (source.one(), target.one()) {
            (Some(a), Some(b)) => {
                if h(a) != b {
                    return Err(Error::InvalidStructure("h(1) differs from 1".into()));
                }
                true
            }
            _ => false,
        };
        let mut seen = ElementSet::EMPTY;
        let mut injective = true;
        for x in &map {
            if seen.contains(*x) {
                injective = false;
            }
            seen.insert(*x);
        }
        Ok(Homomorphism {
            source: source.name().to_string(),
            target: target.name().to_string(),
            map,
            injective,
            identity_complete,
        })
    }

    pub fn identity(a: &HyperStructure) -> Self {
        Homomorphism::new(a, a, a.element_vec()).expect("identity map is a homomorphism")
    }

    pub fn apply(&self, x: Element) -> Element {
        self.map[x.index()]
    }

    pub fn image(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|x| self.apply(x)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// False when either side lacks an identity, so `h(1) = 1` was not checked.
    pub fn is_identity_complete(&self) -> bool {
        self.identity_complete
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }
}

/// `{ a : h(a) in Q2 }`.
pub fn preimage_ideal(h: &Homomorphism, q2: ElementSet) -> ElementSet {
    h.map.iter().enumerate().filter(|(_, y)| q2.contains(**y)).map(|(i, _)| Element::new(i)).collect()
}

/// The canonical map `Z_{ab} -> Z_a x Z_b`. Requires `gcd(a, b) = 1` to be
/// a homomorphism that respects identities.
pub fn crt_map(ab: &HyperStructure, a: usize, b: usize, product: &HyperStructure) -> Result<Homomorphism> {
    let map = (0..ab.size()).map(|x| pair_index(Element::new(x % a), Element::new(x % b), b)).collect();
    Homomorphism::new(ab, product, map)
}

/// Restriction of `A` to a subset closed under `f` and `g`, with its
/// inclusion map. Elements are renumbered in ascending order and keep their
/// names; the identity is kept only when it lies in the subset.
pub fn substructure(a: &HyperStructure, subset: ElementSet) -> Result<(HyperStructure, Homomorphism)> {
    if !subset.contains(a.zero()) {
        return Err(Error::InvalidStructure("subset must contain zero".into()));
    }
    let members = subset.to_vec();
    let mut ok = true;
    let _ = for_each_multiset(&members, a.m(), |t| {
        ok &= a.f(t).is_subset(subset);
        if ok {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    let _ = for_each_multiset(&members, a.n(), |t| {
        ok &= subset.contains(a.g(t));
        if ok {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    if !ok {
        return Err(Error::InvalidStructure("subset is not closed under f and g".into()));
    }
    let local = |x: Element| Element::new(members.iter().position(|y| *y == x).expect("closed"));
    let names = members.iter().map(|x| a.element_name(*x).to_string()).collect();
    let one = a.one().filter(|o| subset.contains(*o)).map(local);
    let sub = HyperStructure::from_fn(
        format!("{}|{}", a.name(), a.render_set(subset)),
        a.m(),
        a.n(),
        names,
        local(a.zero()),
        one,
        |t| {
            let global: Vec<Element> = t.iter().map(|x| members[x.index()]).collect();
            a.f(&global).iter().map(local).collect()
        },
        |t| {
            let global: Vec<Element> = t.iter().map(|x| members[x.index()]).collect();
            local(a.g(&global))
        },
    )?;
    let inclusion = Homomorphism::new(&sub, a, members.clone())?;
    Ok((sub, inclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_krasner;
    use crate::ideals::is_hyperideal;
    use crate::predicates::{is_multiplicative, is_prime};
    use crate::set_of;

    #[test]
    fn fixture_names() {
        assert!(fixture("ring:Z1").is_ok());
        assert!(fixture("ring:Z64").is_ok());
        assert!(matches!(fixture("ring:Z65"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        let p = fixture("ring:Z2*ring:Z3").unwrap();
        assert_eq!(p.factors, vec!["ring:Z2", "ring:Z3"]);
        assert_eq!(p.structure.size(), 6);
        assert_eq!(p.structure.element_name(Element::new(4)), "1:1");
        let t = fixture("ring:Z2*ring:Z2*ring:Z3").unwrap();
        assert_eq!(t.factors.len(), 3);
        assert_eq!(t.structure.size(), 12);
    }

    #[test]
    fn crt_product_is_z6() {
        let z6 = ring_zk(6);
        let p = product(&ring_zk(2), &ring_zk(3)).unwrap();
        assert!(check_krasner(&p).is_empty());
        let h = crt_map(&z6, 2, 3, &p).unwrap();
        assert!(h.is_injective());
        assert!(h.is_identity_complete());
        // tables agree under the bijection
        for x in z6.elements() {
            for y in z6.elements() {
                assert_eq!(h.image(z6.f(&[x, y])), p.f(&[h.apply(x), h.apply(y)]));
                assert_eq!(h.apply(z6.g(&[x, y])), p.g(&[h.apply(x), h.apply(y)]));
            }
        }
    }

    #[test]
    fn madar_squared_is_valid_without_identity() {
        let a = fixture("paper-2-4").unwrap().structure;
        let p = product(&a, &a).unwrap();
        assert_eq!(p.size(), 16);
        assert_eq!(p.one(), None);
        assert!(check_krasner(&p).is_empty());
    }

    #[test]
    fn product_with_trivial_factor() {
        let a = fixture("paper-2-4").unwrap().structure;
        let trivial = HyperStructure::from_fn(
            "zero",
            2,
            4,
            vec!["0".into()],
            Element::new(0),
            None,
            |_| set_of(&[0]),
            |_| Element::new(0),
        )
        .unwrap();
        let p = product(&a, &trivial).unwrap();
        assert_eq!(p.size(), 4);
        for x in a.elements() {
            for y in a.elements() {
                let img: ElementSet = a.f(&[x, y]).iter().map(|z| pair_index(z, Element::new(0), 1)).collect();
                assert_eq!(p.f(&[pair_index(x, Element::new(0), 1), pair_index(y, Element::new(0), 1)]), img);
            }
        }
        assert!(check_krasner(&p).is_empty());
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let a = fixture("paper-2-4").unwrap().structure;
        assert!(matches!(product(&a, &ring_zk(2)), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn product_ideals_and_sets() {
        let z2 = ring_zk(2);
        let z3 = ring_zk(3);
        let p = product(&z2, &z3).unwrap();
        assert_eq!(product_ideal(set_of(&[0]), set_of(&[0]), &z3), p.zero_set());
        let q = product_ideal(set_of(&[0]), z3.full_set(), &z3);
        assert!(is_prime(&p, q).unwrap().holds);

        let z4 = ring_zk(4);
        let p43 = product(&z4, &z3).unwrap();
        assert!(is_hyperideal(&p43, product_ideal(set_of(&[0, 2]), set_of(&[0]), &z3)).holds);

        let one = product_mult_set(set_of(&[1]), set_of(&[1]), &z3);
        assert_eq!(one, ElementSet::singleton(p.one().unwrap()));

        let z6 = ring_zk(6);
        let p62 = product(&z6, &z2).unwrap();
        let s = product_mult_set(set_of(&[1, 3]), set_of(&[1]), &z2);
        assert_eq!(s.len(), 2);
        assert!(is_multiplicative(&p62, s).holds);

        let z12 = ring_zk(12);
        let p123 = product(&z12, &z3).unwrap();
        assert!(is_multiplicative(&z3, set_of(&[1, 2])).holds);
        assert!(is_multiplicative(&p123, product_mult_set(set_of(&[1, 5]), set_of(&[1, 2]), &z3)).holds);
    }

    #[test]
    fn preimages() {
        let z6 = ring_zk(6);
        let id = Homomorphism::identity(&z6);
        assert_eq!(preimage_ideal(&id, set_of(&[0, 3])), set_of(&[0, 3]));

        let z2 = ring_zk(2);
        let z3 = ring_zk(3);
        let p = product(&z2, &z3).unwrap();
        let proj: Vec<Element> = p.elements().map(|x| split_pair(x, 3).0).collect();
        let h = Homomorphism::new(&p, &z2, proj).unwrap();
        assert!(!h.is_injective());
        let pre = preimage_ideal(&h, set_of(&[0]));
        assert_eq!(pre, product_ideal(set_of(&[0]), z3.full_set(), &z3));
        assert!(is_hyperideal(&p, pre).holds);

        // a -> (a, 0) does not respect identities
        let bad: Vec<Element> = z2.elements().map(|a| pair_index(a, Element::new(0), 3)).collect();
        assert!(Homomorphism::new(&z2, &p, bad).is_err());
    }

    #[test]
    fn subring_inclusion_preimage_is_intersection() {
        let z12 = ring_zk(12);
        let b = set_of(&[0, 4, 8]);
        let (sub, inc) = substructure(&z12, b).unwrap();
        assert!(check_krasner(&sub).is_empty());
        assert!(inc.is_injective());
        assert!(!inc.is_identity_complete());
        let q2 = set_of(&[0, 2, 4, 6, 8, 10]);
        let pre = preimage_ideal(&inc, q2);
        let expected: ElementSet =
            q2.intersection(b).iter().map(|x| sub.element(z12.element_name(x)).unwrap()).collect();
        assert_eq!(pre, expected);
        assert!(is_hyperideal(&sub, pre).holds);
        assert!(substructure(&z12, set_of(&[0, 5])).is_err());
    }
}
