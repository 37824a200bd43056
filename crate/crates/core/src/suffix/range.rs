use std::fmt;

/// Inclusive, 1-based suffix-array row interval `[lo, hi]`; empty iff `lo > hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuffixRange {
    pub lo: usize,
    pub hi: usize,
}

impl SuffixRange {
    pub const EMPTY: SuffixRange = SuffixRange { lo: 1, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Self {
        if lo > hi {
            Self::EMPTY
        } else {
            SuffixRange { lo, hi }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    /// `self` contains every row of `inner` (and both are nonempty).
    pub fn encloses(&self, inner: &SuffixRange) -> bool {
        !self.is_empty() && !inner.is_empty() && self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Debug for SuffixRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

/// Matching statistics entry for one pattern position: the longest prefix of
/// the pattern suffix starting there that occurs in the text, and its range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MsEntry {
    pub len: usize,
    pub range: SuffixRange,
}

/// Matching statistics of a whole pattern, indexed by 0-based position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchingStatistics {
    pub entries: Vec<MsEntry>,
}

impl MatchingStatistics {
    pub fn lengths(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.len).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for 1-based pattern position `i`.
    pub fn at(&self, i: usize) -> MsEntry {
        self.entries[i - 1]
    }
}
