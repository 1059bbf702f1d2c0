//! Dynamically sized bitsets over a vertex range `[0, n)`.
//!
//! `VertexSet` is the working currency of every solver in this crate: rows of
//! the adjacency matrix, candidate sets in branch-and-bound, common
//! neighbourhoods and solver witnesses are all `VertexSet`s. Operations are
//! word-parallel over `u64` blocks.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(WORD_BITS)
}

/// A set of vertices of a graph on `nbits` vertices, stored as packed bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    nbits: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set over the range `[0, nbits)`.
    pub fn empty(nbits: usize) -> Self {
        VertexSet {
            nbits,
            words: vec![0; words_for(nbits)],
        }
    }

    /// The full set `{0, ..., nbits-1}`.
    pub fn full(nbits: usize) -> Self {
        let mut s = VertexSet::empty(nbits);
        for w in 0..s.words.len() {
            s.words[w] = !0u64;
        }
        s.clear_tail();
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(nbits: usize, iter: I) -> Self {
        let mut s = VertexSet::empty(nbits);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(nbits: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(nbits));
        let mut s = VertexSet { nbits, words };
        s.clear_tail();
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.nbits % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        if self.nbits == 0 {
            self.words.clear();
        }
    }

    /// Size of the underlying vertex range (not the cardinality).
    #[inline]
    pub fn universe(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.nbits, "vertex {v} out of range 0..{}", self.nbits);
        self.words[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        assert!(v < self.nbits, "vertex {v} out of range 0..{}", self.nbits);
        self.words[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.nbits && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Cardinality.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> SetIter<'_> {
        SetIter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    pub fn intersect_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Intersect with a raw word slice (e.g. an adjacency row).
    #[inline]
    pub fn intersect_words(&mut self, row: &[u64]) {
        debug_assert_eq!(self.words.len(), row.len());
        for (a, &b) in self.words.iter_mut().zip(row) {
            *a &= b;
        }
    }

    #[inline]
    pub fn union_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    #[inline]
    pub fn difference_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_assign(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_assign(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_assign(other);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Number of elements shared with a raw word slice.
    #[inline]
    pub fn intersection_len_words(&self, row: &[u64]) -> usize {
        debug_assert_eq!(self.words.len(), row.len());
        self.words
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

pub struct SetIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for SetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Order sets by their ascending element lists (lexicographic). Used wherever
/// a solver promises a deterministic "least witness".
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = VertexSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn full_respects_tail() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_iter(10, [1, 3, 5, 7]);
        let b = VertexSet::from_iter(10, [3, 4, 5]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3, 5]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 4, 5, 7]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 7]);
        assert!(VertexSet::from_iter(10, [3, 5]).is_subset(&a));
        assert!(!a.is_subset(&b));
    }

    #[test]
    fn lexicographic_order_on_element_lists() {
        let s05 = VertexSet::from_iter(8, [0, 5]);
        let s12 = VertexSet::from_iter(8, [1, 2]);
        let s0 = VertexSet::from_iter(8, [0]);
        assert!(s05 < s12);
        assert!(s0 < s05);
        assert!(VertexSet::empty(8) < s0);
    }
}
