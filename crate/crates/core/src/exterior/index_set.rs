use std::cmp::Ordering;
use std::fmt;

/// Maximum number of degree-1 generators an exterior algebra may have.
pub const MAX_GENERATORS: usize = 32;

/// A strictly increasing set of generator indices, stored as a bitmask.
/// The empty set is the degree-0 monomial `1`.
///
/// Ordering is by cardinality first, then lexicographic on the sorted index
/// lists, so that a sorted list of same-degree sets is the canonical basis
/// order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_mask(mask: u32) -> Self {
        IndexSet(mask)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GENERATORS, "generator index {i} out of range");
        IndexSet(1 << i)
    }

    /// Builds a set from distinct indices given in any order.
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!(i < MAX_GENERATORS, "generator index {i} out of range");
            assert!(mask & (1 << i) == 0, "repeated index {i}");
            mask |= 1 << i;
        }
        IndexSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GENERATORS && self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, mask: u32) -> bool {
        self.0 & !mask == 0
    }

    pub fn is_disjoint(self, other: IndexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn without(self, i: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        })
    }

    /// 0-based position of `i` within the sorted index list, if present.
    pub fn position(self, i: usize) -> Option<usize> {
        self.contains(i)
            .then(|| (self.0 & ((1u32 << i) - 1)).count_ones() as usize)
    }

    /// Sign of `e_self ∧ e_other = ±e_{self ∪ other}` for disjoint sets:
    /// the parity of the number of pairs `(i, j)` with `i ∈ self`,
    /// `j ∈ other`, `i > j`. Returns `None` when the sets overlap.
    pub fn merge_sign(self, other: IndexSet) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions: u32 = other
            .indices()
            .map(|j| {
                let above = if j + 1 >= 32 { 0 } else { self.0 >> (j + 1) };
                above.count_ones()
            })
            .sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (1 << diff.trailing_zeros()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<usize> = self.indices().collect();
        write!(f, "{idx:?}")
    }
}

/// All `C(ambient, k)` subsets of size `k` in lexicographic order.
pub fn basis_of_degree(k: usize, ambient: usize) -> Vec<IndexSet> {
    subsets_of(k, &(0..ambient).collect::<Vec<_>>())
}

/// Size-`k` subsets of the given sorted index list, lexicographic.
pub(crate) fn subsets_of(k: usize, pool: &[usize]) -> Vec<IndexSet> {
    fn go(k: usize, pool: &[usize], start: usize, acc: u32, out: &mut Vec<IndexSet>) {
        if k == 0 {
            out.push(IndexSet(acc));
            return;
        }
        for p in start..pool.len() {
            if pool.len() - p < k {
                break;
            }
            go(k - 1, pool, p + 1, acc | (1 << pool[p]), out);
        }
    }
    let mut out = Vec::new();
    if k <= pool.len() {
        go(k, pool, 0, 0, &mut out);
    }
    out
}
