//! Brute-force reference implementations. Slow on purpose; tests only.

use std::collections::BTreeSet;

use crate::suffix::{MatchingStatistics, MsEntry, SuffixRange, Symbol};

/// 1-based start positions `p` where every pattern byte equals the text byte
/// or the text byte is `wildcard`.
pub fn naive_match(text: &[u8], pattern: &[u8], wildcard: u8) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&p| pattern.iter().zip(&text[p..]).all(|(&c, &t)| t == wildcard || t == c))
        .map(|p| p + 1)
        .collect()
}

/// 1-based suffix array by comparison sort.
pub fn naive_suffix_array(text: &[Symbol]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..text.len()).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    sa.into_iter().map(|p| p + 1).collect()
}

#[derive(Debug, Clone)]
pub struct NaiveIndex {
    pub text: Vec<Symbol>,
    pub sa: Vec<usize>,
}

impl NaiveIndex {
    pub fn new(text: &[Symbol]) -> Self {
        NaiveIndex { text: text.to_vec(), sa: naive_suffix_array(text) }
    }

    pub fn find_range(&self, pattern: &[Symbol]) -> SuffixRange {
        let hits: Vec<usize> =
            (1..=self.sa.len()).filter(|&r| self.text[self.sa[r - 1] - 1..].starts_with(pattern)).collect();
        match (hits.first(), hits.last()) {
            (Some(&lo), Some(&hi)) => SuffixRange::new(lo, hi),
            _ => SuffixRange::EMPTY,
        }
    }

    pub fn locate(&self, row: usize) -> usize {
        self.sa[row - 1]
    }
}

/// Per position, the longest prefix of `pattern[i..]` occurring in `text`
/// and its range. A zero length reports the full range.
pub fn naive_matching_statistics(text: &[Symbol], pattern: &[Symbol]) -> MatchingStatistics {
    let ix = NaiveIndex::new(text);
    let entries = (0..pattern.len())
        .map(|i| {
            let mut q = 0;
            while i + q < pattern.len() && !ix.find_range(&pattern[i..=i + q]).is_empty() {
                q += 1;
            }
            MsEntry { len: q, range: ix.find_range(&pattern[i..i + q]) }
        })
        .collect();
    MatchingStatistics { entries }
}

/// Pairs `(i, j)`, both 1-based, with `segments[j - 1]` a prefix of `pattern[i..]`.
pub fn naive_prefix_segments<T: AsRef<[Symbol]>>(segments: &[T], pattern: &[Symbol]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..pattern.len() {
        for (j, s) in segments.iter().enumerate() {
            let s = s.as_ref();
            if !s.is_empty() && pattern[i..].starts_with(s) {
                out.insert((i + 1, j + 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn match_examples() {
        assert_eq!(naive_match(b"ab??ca?ab", b"aca", b'?'), vec![4, 6]);
        assert_eq!(naive_match(b"ab", b"abc", b'?'), Vec::<usize>::new());
        assert_eq!(naive_match(b"a?a", b"b", b'?'), vec![2]);
    }

    #[test]
    fn suffix_array_examples() {
        assert_eq!(naive_suffix_array(&[2, 3, 0]), vec![3, 1, 2]);
        assert_eq!(naive_suffix_array(&[0]), vec![1]);
    }

    #[test]
    fn prefix_segments_single() {
        let segs = vec![vec![2u32, 3], vec![2]];
        let got = naive_prefix_segments(&segs, &[2, 3]);
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![(1, 1), (1, 2)]);
    }
}
