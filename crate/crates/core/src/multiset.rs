//! Multiset ranking and tuple enumeration.
//!
//! Commutative tables are keyed by the sorted multiset of their arguments. A
//! multiset `a_0 <= a_1 <= ... <= a_{k-1}` over `N` elements maps to the
//! strictly increasing sequence `a_i + i` over `N + k - 1` values, whose colex
//! rank is `sum C(a_i + i, i + 1)`.

use std::ops::ControlFlow;

use crate::element::{Element, ElementSet, MAX_CARRIER};

/// Largest supported arity for `f` and `g`.
pub const MAX_ARITY: usize = 16;

const BINOM_ROWS: usize = MAX_CARRIER + MAX_ARITY + 1;
const BINOM_COLS: usize = MAX_ARITY + 2;

fn binom_table() -> &'static [[u64; BINOM_COLS]; BINOM_ROWS] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[[u64; BINOM_COLS]; BINOM_ROWS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0u64; BINOM_COLS]; BINOM_ROWS];
        for n in 0..BINOM_ROWS {
            t[n][0] = 1;
            for k in 1..BINOM_COLS {
                t[n][k] = if n == 0 { 0 } else { t[n - 1][k - 1].saturating_add(t[n - 1][k]) };
            }
        }
        t
    })
}

pub fn binomial(n: usize, k: usize) -> u64 {
    binom_table()[n][k]
}

/// Number of `k`-multisets drawn from `n` elements.
pub fn multiset_count(n: usize, k: usize) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    binomial(n + k - 1, k)
}

/// Dense ranking of `k`-multisets over a carrier of `n` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetIndex {
    carrier: usize,
    arity: usize,
}

impl MultisetIndex {
    pub fn new(carrier: usize, arity: usize) -> Self {
        assert!(carrier <= MAX_CARRIER && arity <= MAX_ARITY);
        MultisetIndex { carrier, arity }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        multiset_count(self.carrier, self.arity) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of an already sorted argument list.
    #[inline]
    pub fn rank_sorted(&self, sorted: &[Element]) -> usize {
        debug_assert_eq!(sorted.len(), self.arity);
        let t = binom_table();
        let mut r = 0u64;
        for (i, e) in sorted.iter().enumerate() {
            r += t[e.index() + i][i + 1];
        }
        r as usize
    }

    /// Rank of an argument list in any order.
    #[inline]
    pub fn rank(&self, args: &[Element]) -> usize {
        let mut buf = [Element::new(0); MAX_ARITY];
        let buf = &mut buf[..args.len()];
        buf.copy_from_slice(args);
        buf.sort_unstable();
        self.rank_sorted(buf)
    }
}

/// Visits every nondecreasing `k`-tuple over `items` (which must be sorted
/// ascending), in lexicographic order.
pub fn for_each_multiset<F>(items: &[Element], k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Element]) -> ControlFlow<()>,
{
    let mut tuple = vec![Element::new(0); k];
    for_each_index_multiset(items.len(), k, |idx| {
        for (slot, i) in tuple.iter_mut().zip(idx) {
            *slot = items[*i];
        }
        visit(&tuple)
    })
}

/// Visits every nondecreasing `k`-tuple over `0..len`, in lexicographic order.
pub fn for_each_index_multiset<F>(len: usize, k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if k == 0 {
        return visit(&[]);
    }
    if len == 0 {
        return ControlFlow::Continue(());
    }
    let mut idx = vec![0usize; k];
    loop {
        visit(&idx)?;
        // advance the rightmost position that can still grow
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == len - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return ControlFlow::Continue(());
        }
        let next = idx[pos - 1] + 1;
        for slot in &mut idx[pos - 1..] {
            *slot = next;
        }
    }
}

/// Visits every tuple of the cartesian product of `sets`, in lexicographic
/// order. Visits nothing if any set is empty.
pub fn for_each_product<F>(sets: &[ElementSet], mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Element]) -> ControlFlow<()>,
{
    let lists: Vec<Vec<Element>> = sets.iter().map(|s| s.to_vec()).collect();
    if lists.iter().any(Vec::is_empty) {
        return ControlFlow::Continue(());
    }
    let k = lists.len();
    let mut idx = vec![0usize; k];
    let mut tuple: Vec<Element> = lists.iter().map(|l| l[0]).collect();
    loop {
        visit(&tuple)?;
        let mut pos = k;
        loop {
            if pos == 0 {
                return ControlFlow::Continue(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < lists[pos].len() {
                tuple[pos] = lists[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = lists[pos][0];
        }
    }
}

/// Number of distinct values in a sorted tuple.
pub fn distinct_count<T: PartialEq>(sorted: &[T]) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    1 + sorted.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(n: usize) -> Vec<Element> {
        (0..n).map(Element::new).collect()
    }

    #[test]
    fn ranks_are_a_bijection() {
        for n in 1..7 {
            for k in 1..5 {
                let index = MultisetIndex::new(n, k);
                let mut seen = vec![false; index.len()];
                let mut count = 0;
                let _ = for_each_multiset(&elems(n), k, |t| {
                    let r = index.rank_sorted(t);
                    assert!(!seen[r], "rank collision n={n} k={k}");
                    seen[r] = true;
                    count += 1;
                    ControlFlow::Continue(())
                });
                assert_eq!(count, index.len());
                assert!(seen.into_iter().all(|b| b));
            }
        }
    }

    #[test]
    fn rank_ignores_argument_order() {
        let index = MultisetIndex::new(5, 3);
        let a = [Element::new(4), Element::new(1), Element::new(3)];
        let b = [Element::new(1), Element::new(3), Element::new(4)];
        assert_eq!(index.rank(&a), index.rank_sorted(&b));
    }

    #[test]
    fn product_enumeration_counts() {
        let sets = [crate::set_of(&[0, 1]), crate::set_of(&[2, 3, 4])];
        let mut seen = Vec::new();
        let _ = for_each_product(&sets, |t| {
            seen.push((t[0].index(), t[1].index()));
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], (0, 2));
        assert_eq!(seen[5], (1, 4));
        let empty = [crate::set_of(&[0]), ElementSet::EMPTY];
        let mut hits = 0;
        let _ = for_each_product(&empty, |_| {
            hits += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(hits, 0);
    }

    #[test]
    fn counts_match_closed_form() {
        assert_eq!(multiset_count(4, 4), 35);
        assert_eq!(multiset_count(16, 7), 170_544);
        assert_eq!(multiset_count(3, 3), 10);
        assert_eq!(distinct_count(&[Element::new(1), Element::new(1), Element::new(2)]), 2);
    }
}
