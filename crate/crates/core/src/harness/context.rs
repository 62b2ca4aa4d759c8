//! Per-structure data shared by all properties: lattice, multiplicative
//! sets, radical of zero, subhyperrings, homomorphisms into the structure.

use std::sync::OnceLock;

use crate::axioms::check_krasner;
use crate::budget::Budget;
use crate::constructions::{crt_map, fixture, substructure, Fixture, Homomorphism};
use crate::element::{Element, ElementSet};
use crate::error::Result;
use crate::ideals::{enumerate_hyperideals_with, radical, IdealLattice};
use crate::predicates::multiplicative_sets;
use crate::structure::HyperStructure;

/// Size caps used when generating instances.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest multiplicative set drawn for `(A, Q, S)` instances.
    pub max_mult_size: usize,
    /// Largest factor multiplicative set for product instances.
    pub factor_mult_size: usize,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_mult_size: 3, factor_mult_size: 2, budget: Budget::default() }
    }
}

/// A monomorphism `source -> target` together with its source structure.
pub(crate) struct Embedding {
    pub label: String,
    pub source: HyperStructure,
    pub map: Homomorphism,
}

pub(crate) struct Ctx {
    pub name: String,
    pub fixture: Fixture,
    pub config: SuiteConfig,
    pub violations: usize,
    lattice: std::result::Result<IdealLattice, String>,
    pub mult: Vec<ElementSet>,
    pub factor_mult: Vec<ElementSet>,
    pub factors: Vec<Ctx>,
    subrings: OnceLock<Vec<ElementSet>>,
    embeddings: OnceLock<Vec<Embedding>>,
}

impl Ctx {
    pub fn new(name: &str, config: SuiteConfig) -> Result<Ctx> {
        let fixture = fixture(name)?;
        Ok(Ctx::from_fixture(name, fixture, config))
    }

    fn from_fixture(name: &str, fixture: Fixture, config: SuiteConfig) -> Ctx {
        let a = &fixture.structure;
        let violations = check_krasner(a).len();
        let lattice = if violations == 0 {
            enumerate_hyperideals_with(a, &config.budget).map_err(|e| e.to_string())
        } else {
            Err(format!("{violations} axiom violations"))
        };
        let mult = multiplicative_sets(a, config.max_mult_size);
        let factor_mult = multiplicative_sets(a, config.factor_mult_size);
        let factors = fixture.factors.iter().filter_map(|f| Ctx::new(f, config).ok()).collect();
        Ctx {
            name: name.to_string(),
            fixture,
            config,
            violations,
            lattice,
            mult,
            factor_mult,
            factors,
            subrings: OnceLock::new(),
            embeddings: OnceLock::new(),
        }
    }

    pub fn a(&self) -> &HyperStructure {
        &self.fixture.structure
    }

    pub fn valid(&self) -> bool {
        self.violations == 0
    }

    pub fn lattice(&self) -> std::result::Result<&IdealLattice, String> {
        self.lattice.as_ref().map_err(Clone::clone)
    }

    pub fn rad0(&self) -> std::result::Result<ElementSet, String> {
        Ok(radical(self.a(), self.a().zero_set(), self.lattice()?))
    }

    /// Proper subsets containing zero, closed under `f` and `g`, that are
    /// Krasner hyperrings in their own right.
    pub fn subrings(&self) -> &[ElementSet] {
        self.subrings.get_or_init(|| {
            let a = self.a();
            let zero = a.zero();
            let others: Vec<Element> = a.elements().filter(|x| *x != zero).collect();
            if others.len() > 16 {
                return Vec::new();
            }
            let mut out = Vec::new();
            for mask in 0u64..(1 << others.len()) {
                let mut set = ElementSet::singleton(zero);
                for (i, x) in others.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        set.insert(*x);
                    }
                }
                if set == a.full_set() {
                    continue;
                }
                if let Ok((sub, _)) = substructure(a, set) {
                    if check_krasner(&sub).is_empty() {
                        out.push(set);
                    }
                }
            }
            out.sort_by_key(|s| (s.len(), s.bits()));
            out
        })
    }

    /// Monomorphisms into this structure: the identity, and the Chinese
    /// remainder isomorphisms in either direction between `Z_ab` and
    /// `Z_a x Z_b` for coprime `a`, `b`.
    pub fn embeddings(&self) -> &[Embedding] {
        self.embeddings.get_or_init(|| {
            let a = self.a();
            let mut out =
                vec![Embedding { label: "identity".into(), source: a.clone(), map: Homomorphism::identity(a) }];
            if let Some((p, q)) = coprime_pair(&self.fixture.factors) {
                let zpq = crate::constructions::ring_zk(p * q);
                if let Ok(h) = crt_map(&zpq, p, q, a) {
                    out.push(Embedding { label: format!("crt:ring:Z{}", p * q), source: zpq, map: h });
                }
            } else if let Some(k) = ring_order(&self.name) {
                for p in 2..k {
                    let q = k / p;
                    if p * q != k || p >= q || gcd(p, q) != 1 {
                        continue;
                    }
                    let name = format!("ring:Z{p}*ring:Z{q}");
                    let Ok(pair) = fixture(&name) else { continue };
                    let Ok(forward) = crt_map(a, p, q, &pair.structure) else { continue };
                    let mut inverse = vec![a.zero(); a.size()];
                    for (x, y) in forward.map().iter().enumerate() {
                        inverse[y.index()] = Element::new(x);
                    }
                    if let Ok(h) = Homomorphism::new(&pair.structure, a, inverse) {
                        out.push(Embedding { label: format!("crt-inverse:{name}"), source: pair.structure, map: h });
                    }
                }
            }
            out.retain(|e| e.map.is_injective());
            out
        })
    }
}

fn ring_order(name: &str) -> Option<usize> {
    name.strip_prefix("ring:Z")?.parse().ok()
}

fn coprime_pair(factors: &[String]) -> Option<(usize, usize)> {
    match factors {
        [x, y] => {
            let (p, q) = (ring_order(x)?, ring_order(y)?);
            (p > 1 && q > 1 && gcd(p, q) == 1).then_some((p, q))
        }
        _ => None,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Mixed-radix coordinates of an element of a left-nested product.
pub(crate) fn coords(x: Element, sizes: &[usize]) -> Vec<Element> {
    let mut rest = x.index();
    let mut out = vec![Element::new(0); sizes.len()];
    for (slot, size) in out.iter_mut().zip(sizes).rev() {
        *slot = Element::new(rest % size);
        rest /= size;
    }
    out
}

/// Splits a subset of a product into its coordinate projections when it is
/// a rectangle.
pub(crate) fn rectangle(set: ElementSet, sizes: &[usize]) -> Option<Vec<ElementSet>> {
    let mut parts = vec![ElementSet::EMPTY; sizes.len()];
    for x in set {
        for (p, c) in parts.iter_mut().zip(coords(x, sizes)) {
            p.insert(c);
        }
    }
    let count: usize = parts.iter().map(|p| p.len()).product();
    (count == set.len()).then_some(parts)
}

/// The rectangle with the given coordinate sets.
pub(crate) fn compose(parts: &[ElementSet], sizes: &[usize]) -> ElementSet {
    let total: usize = sizes.iter().product();
    (0..total).map(Element::new).filter(|x| coords(*x, sizes).iter().zip(parts).all(|(c, p)| p.contains(*c))).collect()
}

/// Every nonzero element has a `g`-inverse: `g(x, y, 1, ..., 1) = 1`.
pub(crate) fn is_hyperfield(a: &HyperStructure) -> bool {
    let Some(one) = a.one() else { return false };
    a.elements().filter(|x| *x != a.zero()).all(|x| {
        a.elements().any(|y| {
            let mut t = vec![x, y];
            t.resize(a.n(), one);
            a.g(&t) == one
        })
    })
}

/// `g(a_1..a_n) = 0` forces some `a_i = 0`.
pub(crate) fn is_domain(a: &HyperStructure) -> bool {
    let carrier = a.element_vec();
    let zero = a.zero();
    crate::multiset::for_each_multiset(&carrier, a.n(), |t| {
        if a.g(t) == zero && !t.contains(&zero) {
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    })
    .is_continue()
}
