//! Full-text dictionary over a set of text segments.
//!
//! The segments are joined by wildcard groups into one text and indexed with
//! a [`SequenceIndex`]. Each segment occurrence owns the SA range of its
//! string; these ranges nest like an lcp-interval tree and are stored as
//! balanced parentheses, one pair per occurrence in lex-id order.
//!
//! A *lex id* is the rank of an occurrence's start row among all segment
//! start rows. Start rows are the letter-prefixed rows whose BWT symbol is
//! `φ` or `$`, so lex ids are computed from BWT ranks alone.

use crate::bits::{BalancedParentheses, BitVecBuilder, CompressedIntegerArray, RankSelectBitVector};
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::suffix::{
    IndexOptions, MatchingStatistics, SequenceIndex, SuffixRange, Symbol, FIRST_CODE, SENTINEL, UNKNOWN, WILDCARD,
};

/// A matching pair of BP positions, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnclosingInterval {
    pub open: usize,
    pub close: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTextDictionary {
    idx: SequenceIndex,
    /// Length `n + 1`: bit `k` set when an interval starts at row `k` or ends at `k - 1`.
    b: RankSelectBitVector,
    bp: BalancedParentheses,
    /// Segment length by lex id.
    lengths: CompressedIntegerArray,
    /// For the j-th one of `b`, the number of intervals ended before it.
    closed_before: CompressedIntegerArray,
    /// Rows whose suffix starts with `$` or `φ`.
    l0: usize,
    /// Start marks (`φ` or `$` in the BWT) within rows `1..=l0`.
    marks_below: usize,
}

/// Output of [`FullTextDictionary::build`] besides the dictionary itself.
#[derive(Debug, Clone)]
pub struct BuildInfo {
    /// `pi[t - 1]` = 0-based position-order index of the segment with lex id `t`.
    pub pi: Vec<usize>,
    /// The joined text, sentinel included.
    pub text: Vec<Symbol>,
    /// 0-based start of each segment in `text`.
    pub starts: Vec<usize>,
}

impl FullTextDictionary {
    /// Joins `segments` with `group_sizes[g]` wildcards per gap and builds the
    /// dictionary. With `leading_separator` the first group precedes the first
    /// segment and `group_sizes` has one entry per segment; otherwise it has
    /// one entry per gap.
    pub fn build<S: AsRef<[Symbol]>>(
        segments: &[S],
        group_sizes: &[usize],
        leading_separator: bool,
        opts: IndexOptions,
    ) -> Result<(Self, BuildInfo)> {
        if segments.is_empty() {
            return Err(Error::Format("no text segments".into()));
        }
        let want = if leading_separator { segments.len() } else { segments.len() - 1 };
        if group_sizes.len() != want {
            return Err(Error::Argument(format!("expected {want} group sizes, got {}", group_sizes.len())));
        }
        if group_sizes.contains(&0) {
            return Err(Error::Argument("wildcard groups must be nonempty".into()));
        }
        let total: usize =
            segments.iter().map(|s| s.as_ref().len()).sum::<usize>() + group_sizes.iter().sum::<usize>() + 1;
        let mut text = Vec::with_capacity(total);
        let mut starts = Vec::with_capacity(segments.len());
        let mut groups = group_sizes.iter();
        for (j, s) in segments.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(Error::Format(format!("segment {} is empty", j + 1)));
            }
            if s.iter().any(|&c| c < FIRST_CODE || c == UNKNOWN) {
                return Err(Error::Format(format!("segment {} contains a reserved symbol", j + 1)));
            }
            if leading_separator || j > 0 {
                let g = *groups.next().unwrap();
                text.extend(std::iter::repeat_n(WILDCARD, g));
            }
            starts.push(text.len());
            text.extend_from_slice(s);
        }
        text.push(SENTINEL);
        let dict = Self::build_from_text(&text, &starts, opts)?;
        Ok((dict.0, BuildInfo { pi: dict.1, text, starts }))
    }

    fn build_from_text(text: &[Symbol], starts: &[usize], opts: IndexOptions) -> Result<(Self, Vec<usize>)> {
        let n = text.len();
        let d = starts.len();
        let (idx, sa) = SequenceIndex::build_with_sa(text, opts)?;
        let ends: Vec<usize> = (0..d).map(|j| if j + 1 < d { next_group(text, starts[j]) } else { n - 1 }).collect();

        let mut seg_at = vec![0u32; n];
        for (j, &s) in starts.iter().enumerate() {
            seg_at[s] = j as u32 + 1;
        }
        // Start rows in row order give lex ids.
        let pi: Vec<usize> = sa.iter().filter(|&&p| seg_at[p] != 0).map(|&p| seg_at[p] as usize - 1).collect();
        drop(seg_at);
        drop(sa);

        let lengths: Vec<u64> = pi.iter().map(|&j| (ends[j] - starts[j]) as u64).collect();

        let mut open = BitVecBuilder::new();
        let mut b = BitVecBuilder::with_len(n + 1);
        let mut closes = Vec::with_capacity(d);
        let mut stack: Vec<SuffixRange> = Vec::new();
        let mut prev: Option<(usize, SuffixRange)> = None;
        for &j in &pi {
            let seg = &text[starts[j]..ends[j]];
            // Equal strings are adjacent in lex order; reuse their range.
            let r = match prev {
                Some((pj, r)) if text[starts[pj]..ends[pj]] == *seg => r,
                _ => idx.find_range(seg),
            };
            debug_assert!(!r.is_empty());
            prev = Some((j, r));
            while stack.last().is_some_and(|top| top.hi < r.lo) {
                let top = stack.pop().unwrap();
                open.push(false);
                closes.push(top.hi + 1);
            }
            open.push(true);
            b.set(r.lo - 1, true);
            b.set(r.hi, true);
            stack.push(r);
        }
        while let Some(top) = stack.pop() {
            open.push(false);
            closes.push(top.hi + 1);
        }
        let b = b.build();
        let bp = BalancedParentheses::new(open.build())?;
        // `closes` is nondecreasing: BP closes in end order.
        let mut closed_before = Vec::with_capacity(b.count_ones());
        let mut k = 0;
        for pos in 1..=n + 1 {
            if b.get(pos - 1) {
                while k < closes.len() && closes[k] <= pos {
                    k += 1;
                }
                closed_before.push(k as u64);
            }
        }
        let l0 = idx.count_less(FIRST_CODE);
        let marks_below = idx.char_rank(WILDCARD, l0) + idx.char_rank(SENTINEL, l0);
        let dict = FullTextDictionary {
            idx,
            b,
            bp,
            lengths: CompressedIntegerArray::from_slice(&lengths),
            closed_before: CompressedIntegerArray::from_slice(&closed_before),
            l0,
            marks_below,
        };
        Ok((dict, pi))
    }

    pub fn index(&self) -> &SequenceIndex {
        &self.idx
    }

    pub fn b_vec(&self) -> &RankSelectBitVector {
        &self.b
    }

    pub fn bp(&self) -> &BalancedParentheses {
        &self.bp
    }

    pub fn lengths(&self) -> &CompressedIntegerArray {
        &self.lengths
    }

    pub fn closed_before(&self) -> &CompressedIntegerArray {
        &self.closed_before
    }

    /// Number of segment occurrences.
    pub fn seg_count(&self) -> usize {
        self.lengths.len()
    }

    /// Length of the segment with lex id `t`.
    pub fn segment_len(&self, t: usize) -> usize {
        self.lengths.get(t - 1) as usize
    }

    /// Segment start rows among rows `1..=i`.
    #[inline]
    pub fn start_rank(&self, i: usize) -> usize {
        if i <= self.l0 {
            return 0;
        }
        self.idx.char_rank(WILDCARD, i) + self.idx.char_rank(SENTINEL, i) - self.marks_below
    }

    /// The segment interval with the largest lex id whose segment is a prefix
    /// of a string `P` with `|P| = plen` and SA range starting at row `a`.
    pub fn smallest_enclosing_interval(&self, a: usize, plen: usize) -> Option<EnclosingInterval> {
        let k = self.b.rank1(a.min(self.b.len()));
        if k == 0 {
            return None;
        }
        let c = self.b.select1(k)?;
        let d = self.b.select1(k + 1)?;
        let bp = &self.bp;
        let (l, r) = if self.start_rank(d - 1) > self.start_rank(c - 1) {
            let lexid = self.start_rank(d - 1);
            if self.segment_len(lexid) > plen {
                let first = self.start_rank(c - 1) + 1;
                bp.parent_of(bp.select_open(first)?)?
            } else {
                let l = bp.select_open(lexid)?;
                (l, bp.close_of(l))
            }
        } else {
            let closed = self.closed_before.get(k - 1) as usize;
            let r = bp.select_close(closed)?;
            bp.parent_of(bp.open_of(r))?
        };
        Some(EnclosingInterval { open: l, close: r })
    }

    /// Lex ids of every interval enclosing `iv`, innermost first, `iv` included.
    pub fn enclosing_chain(&self, iv: Option<EnclosingInterval>) -> EnclosingChain<'_> {
        EnclosingChain { bp: &self.bp, next: iv.map(|iv| iv.open) }
    }

    /// Number of intervals on the chain from `iv` outward.
    pub fn chain_len(&self, iv: Option<EnclosingInterval>) -> usize {
        iv.map_or(0, |iv| 2 * self.bp.rank_open(iv.open) - iv.open)
    }

    /// Lex ids `[id1, id2]` of the segments prefixed by the string with SA
    /// range `range`; `None` when there are none.
    pub fn segments_with_prefix(&self, range: SuffixRange) -> Option<(usize, usize)> {
        if range.is_empty() {
            return None;
        }
        let id1 = self.start_rank(range.lo - 1) + 1;
        let id2 = self.start_rank(range.hi);
        (id1 <= id2).then_some((id1, id2))
    }

    /// Every `(i, lex id)` with the segment a prefix of `pattern[i..]`, `i` 1-based.
    pub fn segments_contained_in(&self, pattern: &[Symbol]) -> Result<Vec<(usize, usize)>> {
        let ms = self.idx.matching_statistics(pattern)?;
        Ok(self.segments_contained_with(&ms))
    }

    pub fn segments_contained_with(&self, ms: &MatchingStatistics) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, e) in ms.entries.iter().enumerate() {
            if e.len == 0 {
                continue;
            }
            for t in self.enclosing_chain(self.smallest_enclosing_interval(e.range.lo, e.len)) {
                out.push((i + 1, t));
            }
        }
        out
    }

    /// Sorted 1-based text positions where `pattern` occurs.
    pub fn locate_pattern(&self, pattern: &[Symbol]) -> Result<Vec<usize>> {
        let r = self.idx.find_range(pattern);
        let mut out = r.rows().map(|row| self.idx.locate(row)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn component_bits(&self) -> Vec<(&'static str, usize)> {
        let mut v = self.idx.component_bits();
        v.push(("dict_b", self.b.size_bits()));
        v.push(("dict_bp", self.bp.size_bits()));
        v.push(("dict_l", self.lengths.size_bits()));
        v.push(("dict_r", self.closed_before.size_bits()));
        v
    }
}

/// End (exclusive) of the segment starting at `s`: the next wildcard.
fn next_group(text: &[Symbol], s: usize) -> usize {
    s + text[s..].iter().position(|&c| c == WILDCARD || c == SENTINEL).unwrap()
}

/// Iterator over lex ids from an interval outward.
pub struct EnclosingChain<'a> {
    bp: &'a BalancedParentheses,
    next: Option<usize>,
}

impl Iterator for EnclosingChain<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let l = self.next?;
        self.next = self.bp.parent_of(l).map(|(p, _)| p);
        Some(self.bp.rank_open(l))
    }
}

impl Encode for FullTextDictionary {
    fn encode(&self, out: &mut Vec<u8>) {
        self.idx.encode(out);
        self.b.encode(out);
        self.bp.encode(out);
        self.lengths.encode(out);
        self.closed_before.encode(out);
        codec::put_usize(out, self.l0);
        codec::put_usize(out, self.marks_below);
    }
}

impl Decode for FullTextDictionary {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let idx = SequenceIndex::decode(r)?;
        let b = RankSelectBitVector::decode(r)?;
        let bp = BalancedParentheses::decode(r)?;
        let lengths = CompressedIntegerArray::decode(r)?;
        let closed_before = CompressedIntegerArray::decode(r)?;
        let l0 = r.usize()?;
        let marks_below = r.usize()?;
        if b.len() != idx.n() + 1
            || bp.pairs() != lengths.len()
            || closed_before.len() != b.count_ones()
            || l0 != idx.count_less(FIRST_CODE)
            || marks_below != idx.char_rank(WILDCARD, l0) + idx.char_rank(SENTINEL, l0)
            || closed_before.iter().any(|c| c as usize > lengths.len())
        {
            return Err(codec::corrupt("dictionary shape mismatch"));
        }
        Ok(FullTextDictionary { idx, b, bp, lengths, closed_before, l0, marks_below })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_prefix_segments;

    const A: Symbol = 2;
    const C: Symbol = 3;

    fn enc(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| if b == b'a' { A } else { C }).collect()
    }

    fn sample_dictionary() -> (FullTextDictionary, BuildInfo, Vec<Vec<Symbol>>) {
        let segs: Vec<Vec<Symbol>> = ["aa", "aca", "a", "aa", "cacc", "ac"].iter().map(|s| enc(s)).collect();
        let (d, info) = FullTextDictionary::build(&segs, &[1; 6], true, IndexOptions::default()).unwrap();
        (d, info, segs)
    }

    #[test]
    fn sample_structures() {
        let (d, _, _) = sample_dictionary();
        let ones: Vec<usize> = (1..=d.b.len()).filter(|&k| d.b.get(k - 1)).collect();
        assert_eq!(ones, vec![8, 12, 14, 15, 16, 17, 20, 21]);
        assert_eq!(d.bp.to_paren_string(), "((())(()))()");
        assert_eq!(d.lengths.iter().collect::<Vec<_>>(), vec![1, 2, 2, 2, 3, 4]);
        assert_eq!(d.closed_before.iter().collect::<Vec<_>>(), vec![0, 0, 2, 2, 3, 5, 5, 6]);
    }

    #[test]
    fn enclosing_interval_traces() {
        let (d, _, _) = sample_dictionary();
        let iv = d.smallest_enclosing_interval(14, 2);
        assert_eq!(iv, Some(EnclosingInterval { open: 6, close: 9 }));
        assert_eq!(d.smallest_enclosing_interval(17, 1), None);
        assert_eq!(d.smallest_enclosing_interval(20, 3), None);
        assert_eq!(d.enclosing_chain(iv).collect::<Vec<_>>(), vec![4, 1]);
        assert_eq!(d.chain_len(iv), 2);
        let inner = Some(EnclosingInterval { open: 3, close: 4 });
        assert_eq!(d.enclosing_chain(inner).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert_eq!(d.enclosing_chain(None).count(), 0);
    }

    #[test]
    fn prefix_ranges() {
        let (d, _, _) = sample_dictionary();
        assert_eq!(d.segments_with_prefix(SuffixRange::new(14, 16)), Some((4, 5)));
        assert_eq!(d.segments_with_prefix(SuffixRange::new(8, 16)), Some((1, 5)));
        assert_eq!(d.segments_with_prefix(SuffixRange::new(20, 20)), Some((6, 6)));
    }

    #[test]
    fn contained_segments() {
        let (d, info, segs) = sample_dictionary();
        for p in ["acaa", "cacca", "zz", "aaca"] {
            let pat: Vec<Symbol> = p
                .bytes()
                .map(|b| match b {
                    b'a' => A,
                    b'c' => C,
                    _ => UNKNOWN,
                })
                .collect();
            let mut got: Vec<(usize, usize)> =
                d.segments_contained_in(&pat).unwrap().into_iter().map(|(i, t)| (i, info.pi[t - 1] + 1)).collect();
            got.sort();
            let want: Vec<_> = naive_prefix_segments(&segs, &pat).into_iter().collect();
            assert_eq!(got, want, "{p}");
        }
        // Six distinct (i, string) pairs; "aa" occurs twice, so seven occurrences.
        assert_eq!(d.segments_contained_in(&enc("acaa")).unwrap().len(), 7);
    }

    #[test]
    fn locate_examples() {
        let (d, _, _) = sample_dictionary();
        assert_eq!(d.locate_pattern(&enc("aa")).unwrap(), vec![2, 11]);
        assert_eq!(d.locate_pattern(&enc("aca")).unwrap(), vec![5]);
        assert_eq!(d.locate_pattern(&[]).unwrap(), (1..=21).collect::<Vec<_>>());
    }

    #[test]
    fn single_segment() {
        let (d, _) = FullTextDictionary::build(&[vec![A]], &[], false, IndexOptions::default()).unwrap();
        assert_eq!(d.bp.to_paren_string(), "()");
        assert_eq!(d.lengths.iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn rejects_bad_segments() {
        assert!(matches!(
            FullTextDictionary::build(&[vec![A], vec![]], &[1], false, IndexOptions::default()),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            FullTextDictionary::build(&[vec![A, WILDCARD]], &[], false, IndexOptions::default()),
            Err(Error::Format(_))
        ));
    }
}
