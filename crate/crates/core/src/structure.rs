//! Finite commutative (m,n)-hyperstructures stored as multiset-keyed tables.

use std::ops::ControlFlow;

use crate::element::{Element, ElementSet, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::multiset::{for_each_multiset, for_each_product, MultisetIndex, MAX_ARITY};

/// Upper bound on stored table entries per operation.
const MAX_TABLE_ENTRIES: u64 = 1 << 24;

/// A finite carrier with an m-ary hyperoperation `f` and an n-ary operation `g`.
///
/// Both tables are keyed by sorted argument multisets, so every evaluation is
/// invariant under permutation of its arguments. The structure is immutable
/// once built; whether it satisfies the Krasner axioms is a separate question
/// answered by [`crate::axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperStructure {
    name: String,
    m: usize,
    n: usize,
    names: Vec<String>,
    f_index: MultisetIndex,
    g_index: MultisetIndex,
    f_table: Vec<ElementSet>,
    g_table: Vec<Element>,
    zero: Element,
    one: Option<Element>,
}

impl HyperStructure {
    /// Builds a structure by evaluating `f` and `g` on every sorted multiset.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn<F, G>(
        name: impl Into<String>,
        m: usize,
        n: usize,
        names: Vec<String>,
        zero: Element,
        one: Option<Element>,
        mut f: F,
        mut g: G,
    ) -> Result<Self>
    where
        F: FnMut(&[Element]) -> ElementSet,
        G: FnMut(&[Element]) -> Element,
    {
        check_shape(m, n, names.len())?;
        let carrier = all_elements(names.len());
        let mut f_table = Vec::new();
        let _ = for_each_multiset(&carrier, m, |t| {
            f_table.push(f(t));
            ControlFlow::Continue(())
        });
        let mut g_table = Vec::new();
        let _ = for_each_multiset(&carrier, n, |t| {
            g_table.push(g(t));
            ControlFlow::Continue(())
        });
        // enumeration order is lexicographic, storage order is by rank
        let f_index = MultisetIndex::new(names.len(), m);
        let g_index = MultisetIndex::new(names.len(), n);
        let f_table = reorder(&carrier, &f_index, f_table);
        let g_table = reorder(&carrier, &g_index, g_table);
        Self::from_tables(name, m, n, names, zero, one, f_table, g_table)
    }

    /// Builds a structure from tables already laid out by multiset rank.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        name: impl Into<String>,
        m: usize,
        n: usize,
        names: Vec<String>,
        zero: Element,
        one: Option<Element>,
        f_table: Vec<ElementSet>,
        g_table: Vec<Element>,
    ) -> Result<Self> {
        check_shape(m, n, names.len())?;
        let size = names.len();
        let f_index = MultisetIndex::new(size, m);
        let g_index = MultisetIndex::new(size, n);
        if f_table.len() != f_index.len() || g_table.len() != g_index.len() {
            return Err(Error::InvalidStructure("table is not total over multisets".into()));
        }
        let full = ElementSet::full(size);
        if f_table.iter().any(|v| v.is_empty()) {
            return Err(Error::InvalidStructure("empty hyperoperation value".into()));
        }
        if f_table.iter().any(|v| !v.is_subset(full)) || g_table.iter().any(|e| e.index() >= size) {
            return Err(Error::InvalidStructure("table value outside the carrier".into()));
        }
        if zero.index() >= size || one.is_some_and(|o| o.index() >= size) {
            return Err(Error::InvalidStructure("zero or identity outside the carrier".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidStructure("duplicate element name".into()));
        }
        if names.iter().any(|s| s.is_empty() || s.contains(',')) {
            return Err(Error::InvalidStructure("element names must be non-empty and comma-free".into()));
        }
        Ok(HyperStructure { name: name.into(), m, n, names, f_index, g_index, f_table, g_table, zero, one })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Arity of the hyperoperation `f`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Arity of the operation `g`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn one(&self) -> Option<Element> {
        self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.size()).map(Element::new)
    }

    pub fn element_vec(&self) -> Vec<Element> {
        self.elements().collect()
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::singleton(self.zero)
    }

    pub fn element(&self, name: &str) -> Result<Element> {
        self.names
            .iter()
            .position(|s| s == name)
            .map(Element::new)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn element_name(&self, e: Element) -> &str {
        &self.names[e.index()]
    }

    /// Parses a comma-separated list of element names.
    pub fn parse_set(&self, list: &str) -> Result<ElementSet> {
        let mut set = ElementSet::EMPTY;
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            set.insert(self.element(part)?);
        }
        Ok(set)
    }

    pub fn set_names(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|e| self.names[e.index()].clone()).collect()
    }

    pub fn render_set(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.set_names(set).join(","))
    }

    pub fn render_tuple(&self, tuple: &[Element]) -> String {
        let parts: Vec<&str> = tuple.iter().map(|e| self.element_name(*e)).collect();
        format!("({})", parts.join(","))
    }

    pub fn f_index(&self) -> &MultisetIndex {
        &self.f_index
    }

    pub fn g_index(&self) -> &MultisetIndex {
        &self.g_index
    }

    pub fn f_table(&self) -> &[ElementSet] {
        &self.f_table
    }

    pub fn g_table(&self) -> &[Element] {
        &self.g_table
    }

    fn check_args(&self, expected: usize, args: &[Element]) -> Result<()> {
        if args.len() != expected {
            return Err(Error::ArityMismatch { expected, got: args.len() });
        }
        if let Some(bad) = args.iter().find(|e| e.index() >= self.size()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        Ok(())
    }

    /// Table lookup for `f`; `args` must have length `m` and valid elements.
    #[inline]
    pub fn f(&self, args: &[Element]) -> ElementSet {
        self.f_table[self.f_index.rank(args)]
    }

    /// Table lookup for `g`; `args` must have length `n` and valid elements.
    #[inline]
    pub fn g(&self, args: &[Element]) -> Element {
        self.g_table[self.g_index.rank(args)]
    }

    /// Checked `f(x_1, ..., x_m)`.
    pub fn eval_f(&self, args: &[Element]) -> Result<ElementSet> {
        self.check_args(self.m, args)?;
        Ok(self.f(args))
    }

    /// Checked `g(x_1, ..., x_n)`.
    pub fn eval_g(&self, args: &[Element]) -> Result<Element> {
        self.check_args(self.n, args)?;
        Ok(self.g(args))
    }

    /// Union of `f` over the cartesian product of the argument sets.
    pub fn eval_f_on_sets(&self, args: &[ElementSet]) -> Result<ElementSet> {
        self.check_set_args(self.m, args)?;
        Ok(self.f_sets(args))
    }

    /// Setwise image of `g` over the cartesian product of the argument sets.
    pub fn eval_g_on_sets(&self, args: &[ElementSet]) -> Result<ElementSet> {
        self.check_set_args(self.n, args)?;
        Ok(self.g_sets(args))
    }

    fn check_set_args(&self, expected: usize, args: &[ElementSet]) -> Result<()> {
        if args.len() != expected {
            return Err(Error::ArityMismatch { expected, got: args.len() });
        }
        if let Some(pos) = args.iter().position(|s| s.is_empty()) {
            return Err(Error::EmptyArgument(pos));
        }
        let full = self.full_set();
        if args.iter().any(|s| !s.is_subset(full)) {
            return Err(Error::UnknownElement("set member outside the carrier".into()));
        }
        Ok(())
    }

    /// Unchecked setwise `f`; empty arguments give the empty set.
    pub(crate) fn f_sets(&self, args: &[ElementSet]) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        let _ = for_each_product(args, |t| {
            out = out.union(self.f(t));
            ControlFlow::Continue(())
        });
        out
    }

    /// Unchecked setwise `g`; empty arguments give the empty set.
    pub(crate) fn g_sets(&self, args: &[ElementSet]) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        let _ = for_each_product(args, |t| {
            out.insert(self.g(t));
            ControlFlow::Continue(())
        });
        out
    }

    /// Returns a copy with one `f` entry replaced.
    pub fn with_f_value(&self, args: &[Element], value: ElementSet) -> Result<Self> {
        self.check_args(self.m, args)?;
        if value.is_empty() || !value.is_subset(self.full_set()) {
            return Err(Error::InvalidStructure("replacement value must be a non-empty subset".into()));
        }
        let mut out = self.clone();
        let r = out.f_index.rank(args);
        out.f_table[r] = value;
        Ok(out)
    }

    /// Returns a copy with one `g` entry replaced.
    pub fn with_g_value(&self, args: &[Element], value: Element) -> Result<Self> {
        self.check_args(self.n, args)?;
        self.check_args(1, &[value])?;
        let mut out = self.clone();
        let r = out.g_index.rank(args);
        out.g_table[r] = value;
        Ok(out)
    }

    /// Returns a copy with a different declared identity.
    pub fn with_one(&self, one: Option<Element>) -> Result<Self> {
        if one.is_some_and(|o| o.index() >= self.size()) {
            return Err(Error::UnknownElement("identity".into()));
        }
        let mut out = self.clone();
        out.one = one;
        Ok(out)
    }
}

fn check_shape(m: usize, n: usize, size: usize) -> Result<()> {
    if !(2..=MAX_ARITY).contains(&m) || !(2..=MAX_ARITY).contains(&n) {
        return Err(Error::InvalidStructure(format!("arities must lie in 2..={MAX_ARITY}")));
    }
    if size == 0 || size > MAX_CARRIER {
        return Err(Error::InvalidStructure(format!("carrier size {size} outside 1..={MAX_CARRIER}")));
    }
    let entries = crate::multiset::multiset_count(size, m.max(n));
    if entries > MAX_TABLE_ENTRIES {
        return Err(Error::Capacity(format!("{entries} table entries")));
    }
    Ok(())
}

pub(crate) fn all_elements(size: usize) -> Vec<Element> {
    (0..size).map(Element::new).collect()
}

fn reorder<T: Copy + Default>(carrier: &[Element], index: &MultisetIndex, lex: Vec<T>) -> Vec<T> {
    let mut out = vec![T::default(); lex.len()];
    let mut i = 0;
    let _ = for_each_multiset(carrier, index.arity(), |t| {
        out[index.rank_sorted(t)] = lex[i];
        i += 1;
        ControlFlow::Continue(())
    });
    out
}
