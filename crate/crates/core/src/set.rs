//! Fixed-width bitsets over group element indices.

use std::cmp::Ordering;
use std::fmt;

/// Number of 64-bit words backing an [`ElementSet`].
const WORDS: usize = 8;

/// Largest group order an [`ElementSet`] can index.
pub const MAX_ELEMENTS: usize = WORDS * 64;

/// A subset of the elements `0..n` of a group, one bit per element index.
///
/// The same type is used for game positions and for subgroups. Sets are
/// ordered by their bit pattern read as an unsigned integer, so element `0`
/// is the least significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet {
    words: [u64; WORDS],
}

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "set width {n} exceeds {MAX_ELEMENTS}");
        let mut set = Self::empty();
        for (w, word) in set.words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        set
    }

    pub fn singleton(element: usize) -> Self {
        let mut set = Self::empty();
        set.insert(element);
        set
    }

    /// Builds a set from the low `64` bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut set = Self::empty();
        set.words[0] = mask;
        set
    }

    /// The low 64 bits of the set; callers must know the group is small enough.
    pub fn low_mask(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element < MAX_ELEMENTS && self.words[element / 64] >> (element % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, element: usize) -> bool {
        assert!(element < MAX_ELEMENTS, "element {element} out of range");
        let fresh = !self.contains(element);
        self.words[element / 64] |= 1 << (element % 64);
        fresh
    }

    #[inline]
    pub fn remove(&mut self, element: usize) -> bool {
        let present = self.contains(element);
        if present {
            self.words[element / 64] &= !(1 << (element % 64));
        }
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words)
            .all(|(&a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self != other && self.is_subset(other)
    }

    /// Elements in increasing index order.
    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            word: 0,
        }
    }

    /// Lowercase hex of the bit pattern, most significant word first, with
    /// leading zero words dropped. Used by the lattice cache.
    pub fn to_hex(&self) -> String {
        let top = self.words.iter().rposition(|&w| w != 0).unwrap_or(0);
        let mut out = format!("{:x}", self.words[top]);
        for w in self.words[..top].iter().rev() {
            out.push_str(&format!("{w:016x}"));
        }
        out
    }

    pub fn from_hex(text: &str) -> Option<Self> {
        if text.is_empty() || text.len() > WORDS * 16 {
            return None;
        }
        let mut set = Self::empty();
        let bytes = text.as_bytes();
        for (w, chunk) in bytes.rchunks(16).enumerate() {
            let chunk = std::str::from_utf8(chunk).ok()?;
            set.words[w] = u64::from_str_radix(chunk, 16).ok()?;
        }
        Some(set)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::empty();
        for element in iter {
            set.insert(element);
        }
        set
    }
}

impl IntoIterator for &ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = &mut self.words[self.word];
            if *w != 0 {
                let bit = w.trailing_zeros() as usize;
                *w &= *w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_len() {
        assert_eq!(ElementSet::full(0).len(), 0);
        assert_eq!(ElementSet::full(6).len(), 6);
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(130).len(), 130);
        assert_eq!(ElementSet::full(MAX_ELEMENTS).len(), MAX_ELEMENTS);
        assert!(!ElementSet::full(130).contains(130));
    }

    #[test]
    fn ordering_is_numeric() {
        let a = ElementSet::from_iter([0, 2, 4]);
        let b = ElementSet::from_iter([0, 3]);
        assert!(b < a);
        assert!(ElementSet::singleton(64) > ElementSet::from_iter(0..64));
    }

    #[test]
    fn display() {
        assert_eq!(ElementSet::from_iter([4, 0, 2]).to_string(), "{0,2,4}");
        assert_eq!(ElementSet::empty().to_string(), "{}");
    }

    fn arb_set() -> impl Strategy<Value = ElementSet> {
        proptest::collection::vec(0..MAX_ELEMENTS, 0..40).prop_map(ElementSet::from_iter)
    }

    proptest! {
        #[test]
        fn hex_round_trip(set in arb_set()) {
            prop_assert_eq!(ElementSet::from_hex(&set.to_hex()), Some(set));
        }

        #[test]
        fn set_algebra_matches_btreeset(a in arb_set(), b in arb_set()) {
            use std::collections::BTreeSet;
            let sa: BTreeSet<usize> = a.iter().collect();
            let sb: BTreeSet<usize> = b.iter().collect();
            prop_assert_eq!(a.union(&b).iter().collect::<BTreeSet<_>>(), &sa | &sb);
            prop_assert_eq!(a.intersection(&b).iter().collect::<BTreeSet<_>>(), &sa & &sb);
            prop_assert_eq!(a.difference(&b).iter().collect::<BTreeSet<_>>(), &sa - &sb);
            prop_assert_eq!(a.is_subset(&b), sa.is_subset(&sb));
            prop_assert_eq!(a.len(), sa.len());
        }
    }
}
