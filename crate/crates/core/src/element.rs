//! Carrier elements and bit-mask element sets.

use std::fmt;

/// Largest carrier the mask representation supports.
pub const MAX_CARRIER: usize = 64;

/// Index of an element in the carrier of a [`HyperStructure`](crate::HyperStructure).
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct Element(u8);

impl Element {
    pub const fn new(index: usize) -> Self {
        assert!(index < MAX_CARRIER);
        Element(index as u8)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of a carrier of at most 64 elements.
///
/// Iteration is in ascending index order. The set does not record the size of
/// its carrier; operations that need it (complement, full set) take it as an
/// argument.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn full(carrier_size: usize) -> Self {
        debug_assert!(carrier_size <= MAX_CARRIER);
        if carrier_size == MAX_CARRIER {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << carrier_size) - 1)
        }
    }

    #[inline]
    pub const fn singleton(e: Element) -> Self {
        ElementSet(1u64 << e.0)
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn contains(self, e: Element) -> bool {
        self.0 & (1u64 << e.0) != 0
    }

    #[inline]
    pub fn insert(&mut self, e: Element) {
        self.0 |= 1u64 << e.0;
    }

    #[inline]
    pub fn remove(&mut self, e: Element) {
        self.0 &= !(1u64 << e.0);
    }

    #[inline]
    pub const fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    pub fn complement(self, carrier_size: usize) -> ElementSet {
        ElementSet(!self.0 & ElementSet::full(carrier_size).0)
    }

    #[inline]
    pub const fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<Element> {
        if self.0 == 0 {
            None
        } else {
            Some(Element(self.0.trailing_zeros() as u8))
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Element::index)).finish()
    }
}

impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut set = ElementSet::EMPTY;
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Element;

    #[inline]
    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Element(i as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Builds a set from raw indices. Test and fixture helper.
pub fn set_of(indices: &[usize]) -> ElementSet {
    indices.iter().map(|&i| Element::new(i)).collect()
}
