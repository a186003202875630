//! Dense fixed-domain bitsets over element (or subgroup) indices.

use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A set of indices in `0..domain`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    domain: usize,
    words: Vec<u64>,
}

impl IndexSet {
    pub fn new(domain: usize) -> Self {
        IndexSet {
            domain,
            words: vec![0; domain.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut s = Self::new(domain);
        for i in 0..domain {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(domain: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(domain);
        for i in indices {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn domain(&self) -> usize {
        self.domain
    }

    /// Inserts `i`, returning `true` if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.domain, "index {i} out of domain {}", self.domain);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        let mask = 1u64 << b;
        let fresh = self.words[w] & mask == 0;
        self.words[w] |= mask;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.domain && self.words[i / WORD_BITS] & (1u64 << (i % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        debug_assert_eq!(self.domain, other.domain);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.domain, other.domain);
        IndexSet {
            domain: self.domain,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.domain, other.domain);
        IndexSet {
            domain: self.domain,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersect_with(&mut self, other: &IndexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Smallest member of `self ∩ other`, if any.
    pub fn first_common(&self, other: &IndexSet) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find_map(|(i, (a, b))| {
                let w = a & b;
                (w != 0).then(|| i * WORD_BITS + w.trailing_zeros() as usize)
            })
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

/// Lexicographic comparison of the ascending member lists.
impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            self.current = *self.words.get(self.word_idx)?;
        }
    }
}

impl<'a> IntoIterator for &'a IndexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
