//! Subsets of `{1..n}` tagged with what their elements denote.
//!
//! Statistic sets mean different things depending on where they come from:
//! `Rlminl` holds letters, `Lrmaxp` holds places, `Long` holds opener ranks.
//! The kind parameter keeps those from being compared by accident; a
//! transport identity has to call [`IndexSet::relabel`] explicitly.

use std::fmt;
use std::marker::PhantomData;

use serde::{Serialize, Serializer};

/// Values of a permutation (or of a word).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letters;
/// Positions in a permutation window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Places;
/// Ranks `k` of openers `o_k` in a matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenerRanks;
/// Ranks `k` of closers `c_k` in a matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CloserRanks;

/// A subset of `{1..=63}` stored as a bitmask.
pub struct IndexSet<K> {
    bits: u64,
    _kind: PhantomData<K>,
}

impl<K> IndexSet<K> {
    pub const fn empty() -> Self {
        IndexSet { bits: 0, _kind: PhantomData }
    }

    /// `{1..=n}`
    pub fn full(n: usize) -> Self {
        assert!(n < 64);
        IndexSet { bits: ((1u64 << n) - 1) << 1, _kind: PhantomData }
    }

    pub fn insert(&mut self, i: usize) {
        assert!((1..64).contains(&i), "index {i} out of range");
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < 64 {
            self.bits &= !(1 << i);
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..64).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn union(&self, other: &Self) -> Self {
        IndexSet { bits: self.bits | other.bits, _kind: PhantomData }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Reinterpret the same integers under another kind.
    pub fn relabel<L>(self) -> IndexSet<L> {
        IndexSet { bits: self.bits, _kind: PhantomData }
    }

    /// The set with `1` removed.
    pub fn without_one(&self) -> Self {
        IndexSet { bits: self.bits & !0b10, _kind: PhantomData }
    }
}

impl<K> Clone for IndexSet<K> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<K> Copy for IndexSet<K> {}

impl<K> PartialEq for IndexSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}
impl<K> Eq for IndexSet<K> {}

impl<K> std::hash::Hash for IndexSet<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

// Ordered by the sorted member list so multisets print deterministically.
impl<K> Ord for IndexSet<K> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_vec().cmp(&other.to_vec())
    }
}
impl<K> PartialOrd for IndexSet<K> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Default for IndexSet<K> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<K> FromIterator<usize> for IndexSet<K> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<K> fmt::Debug for IndexSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<K> fmt::Display for IndexSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl<K> Serialize for IndexSet<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s: IndexSet<Letters> = [1, 3, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        s.remove(3);
        assert_eq!(s.to_vec(), vec![1, 5]);
        assert_eq!(s.without_one().to_vec(), vec![5]);
        assert_eq!(IndexSet::<Places>::full(4).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(IndexSet::<Places>::full(0), IndexSet::empty());
        assert_eq!(format!("{s}"), "{1,5}");
    }

    #[test]
    fn ordering_is_by_member_list() {
        let a: IndexSet<Places> = [1, 4].into_iter().collect();
        let b: IndexSet<Places> = [2].into_iter().collect();
        assert!(a < b);
    }
}
