//! BWT-based compressed suffix array: backward search, locate by sampled
//! LF walks, per-symbol rank and matching statistics.

use super::alphabet::{Symbol, SENTINEL, UNKNOWN};
use super::construct::{lcp_array, suffix_array};
use super::lcp::LcpSupport;
use super::range::{MatchingStatistics, MsEntry, SuffixRange};
use super::wavelet::WaveletMatrix;
use crate::bits::{BitVecBuilder, CompressedIntegerArray, RankSelectBitVector};
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{out_of_range, Error, Result};

pub const DEFAULT_SAMPLE_RATE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexOptions {
    /// Keep SA values for text positions `p` with `(p - 1) % rate == 0`;
    /// `None` disables `locate`.
    pub sample_rate: Option<usize>,
    /// Build the LCP support required by matching statistics.
    pub lcp: bool,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { sample_rate: Some(DEFAULT_SAMPLE_RATE), lcp: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct SaSamples {
    rate: usize,
    /// Rows whose SA value is sampled.
    marked: RankSelectBitVector,
    /// `(SA[row] - 1) / rate` for marked rows, in row order.
    values: CompressedIntegerArray,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceIndex {
    n: usize,
    bwt: WaveletMatrix,
    /// `c_table[c]` = number of text symbols smaller than `c`.
    c_table: Vec<usize>,
    samples: Option<SaSamples>,
    lcp: Option<LcpSupport>,
}

impl SequenceIndex {
    /// Builds over `text`, which must end with its only `$`.
    pub fn build(text: &[Symbol], opts: IndexOptions) -> Result<Self> {
        Self::build_with_sa(text, opts).map(|(ix, _)| ix)
    }

    /// As [`build`](Self::build), also returning the 0-based suffix array.
    pub(crate) fn build_with_sa(text: &[Symbol], opts: IndexOptions) -> Result<(Self, Vec<usize>)> {
        match text.iter().position(|&c| c == SENTINEL) {
            Some(p) if p + 1 == text.len() => {}
            Some(p) => return Err(Error::Format(format!("sentinel at position {} is not the last symbol", p + 1))),
            None => return Err(Error::Format("text does not end with the sentinel".into())),
        }
        if text.contains(&UNKNOWN) {
            return Err(Error::Format("text contains the reserved unknown code".into()));
        }
        if opts.sample_rate == Some(0) {
            return Err(Error::Argument("sample rate must be at least 1".into()));
        }
        let n = text.len();
        let sa = suffix_array(text);
        let alphabet_size = text.iter().copied().max().unwrap() + 1;
        let bwt: Vec<Symbol> = sa.iter().map(|&p| if p == 0 { SENTINEL } else { text[p - 1] }).collect();
        let mut c_table = vec![0usize; alphabet_size as usize + 1];
        for &c in text {
            c_table[c as usize + 1] += 1;
        }
        for c in 1..c_table.len() {
            c_table[c] += c_table[c - 1];
        }
        let samples = opts.sample_rate.map(|rate| {
            let mut marked = BitVecBuilder::with_len(n);
            let mut values = Vec::with_capacity(n / rate + 1);
            for (row, &p) in sa.iter().enumerate() {
                if p % rate == 0 {
                    marked.set(row, true);
                    values.push((p / rate) as u64);
                }
            }
            SaSamples { rate, marked: marked.build(), values: CompressedIntegerArray::from_slice(&values) }
        });
        let lcp = opts.lcp.then(|| LcpSupport::new(&lcp_array(text, &sa)));
        let ix = SequenceIndex { n, bwt: WaveletMatrix::new(&bwt, alphabet_size), c_table, samples, lcp };
        Ok((ix, sa))
    }

    /// Text length including the sentinel.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_range(&self) -> SuffixRange {
        SuffixRange::new(1, self.n)
    }

    pub fn sample_rate(&self) -> Option<usize> {
        self.samples.as_ref().map(|s| s.rate)
    }

    pub fn has_lcp(&self) -> bool {
        self.lcp.is_some()
    }

    /// Occurrences of `c` in `bwt[1..=i]`. Symbols absent from the text give 0.
    #[inline]
    pub fn char_rank(&self, c: Symbol, i: usize) -> usize {
        self.bwt.rank(c, i.min(self.n))
    }

    /// Number of text symbols smaller than `c`.
    pub fn count_less(&self, c: Symbol) -> usize {
        self.c_table[(c as usize).min(self.c_table.len() - 1)]
    }

    /// BWT symbol at 1-based `row`.
    pub fn bwt_at(&self, row: usize) -> Symbol {
        self.bwt.access(row - 1)
    }

    #[inline]
    fn c_of(&self, c: Symbol) -> Option<usize> {
        self.c_table.get(c as usize).copied().filter(|_| (c as usize) < self.c_table.len() - 1)
    }

    /// SA range of `cX` given the range of `X`.
    #[inline]
    pub fn backward_extend(&self, range: SuffixRange, c: Symbol) -> SuffixRange {
        if range.is_empty() {
            return SuffixRange::EMPTY;
        }
        // `$X` occurs only for empty `X`; the BWT wraps around at the sentinel.
        if c == SENTINEL {
            return if range == self.full_range() { SuffixRange::new(1, 1) } else { SuffixRange::EMPTY };
        }
        let Some(base) = self.c_of(c) else {
            return SuffixRange::EMPTY;
        };
        SuffixRange::new(base + self.bwt.rank(c, range.lo - 1) + 1, base + self.bwt.rank(c, range.hi))
    }

    pub fn find_range(&self, pattern: &[Symbol]) -> SuffixRange {
        let mut r = self.full_range();
        for &c in pattern.iter().rev() {
            r = self.backward_extend(r, c);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    /// LF mapping of 1-based `row`.
    #[inline]
    pub fn lf(&self, row: usize) -> usize {
        let (c, r) = self.bwt.access_rank(row - 1);
        self.c_table[c as usize] + r + 1
    }

    /// Text position (1-based) of the suffix at `row`.
    pub fn locate(&self, row: usize) -> Result<usize> {
        if row == 0 || row > self.n {
            return Err(out_of_range(row, 1, self.n));
        }
        let s = self.samples.as_ref().ok_or_else(|| Error::Argument("index built without locate support".into()))?;
        let mut row = row;
        let mut steps = 0;
        while !s.marked.get(row - 1) {
            row = self.lf(row);
            steps += 1;
        }
        let k = s.marked.rank1(row - 1);
        Ok(s.values.get(k) as usize * s.rate + steps + 1)
    }

    /// Reconstructs the indexed text, sentinel included.
    pub fn extract_text(&self) -> Vec<Symbol> {
        let mut out = vec![SENTINEL; self.n];
        let mut row = 1;
        for p in (0..self.n - 1).rev() {
            let (c, r) = self.bwt.access_rank(row - 1);
            out[p] = c;
            row = self.c_table[c as usize] + r + 1;
        }
        out
    }

    pub fn matching_statistics(&self, pattern: &[Symbol]) -> Result<MatchingStatistics> {
        let mut entries = Vec::with_capacity(pattern.len());
        self.matching_statistics_into(pattern, &mut entries)?;
        Ok(MatchingStatistics { entries })
    }

    /// Fills `out` (cleared first) with one entry per pattern position.
    ///
    /// Backward search from the right end; when an extension fails the
    /// current range is replaced by its parent lcp-interval.
    pub fn matching_statistics_into(&self, pattern: &[Symbol], out: &mut Vec<MsEntry>) -> Result<()> {
        let lcp = self.lcp.as_ref().ok_or_else(|| Error::Argument("index built without LCP support".into()))?;
        out.clear();
        out.resize(pattern.len(), MsEntry { len: 0, range: SuffixRange::EMPTY });
        let root = self.full_range();
        let (mut len, mut range) = (0usize, root);
        for (i, &c) in pattern.iter().enumerate().rev() {
            loop {
                let ext = self.backward_extend(range, c);
                if !ext.is_empty() {
                    len += 1;
                    range = ext;
                    break;
                }
                if len == 0 {
                    range = root;
                    break;
                }
                (len, range) = lcp.parent(range, len);
            }
            out[i] = MsEntry { len, range };
        }
        Ok(())
    }

    /// Quadratic fallback: re-searches every suffix of the pattern from scratch.
    pub fn matching_statistics_by_research(&self, pattern: &[Symbol]) -> MatchingStatistics {
        let entries = (0..pattern.len())
            .map(|i| {
                let mut best = MsEntry { len: 0, range: self.full_range() };
                // Forward growth needs repeated backward searches of P[i..i+q].
                for q in 1..=pattern.len() - i {
                    let r = self.find_range(&pattern[i..i + q]);
                    if r.is_empty() {
                        break;
                    }
                    best = MsEntry { len: q, range: r };
                }
                best
            })
            .collect();
        MatchingStatistics { entries }
    }

    pub fn component_bits(&self) -> Vec<(&'static str, usize)> {
        let mut v = vec![("bwt", self.bwt.size_bits()), ("c_table", 64 * self.c_table.len())];
        if let Some(s) = &self.samples {
            v.push(("sa_samples", s.marked.size_bits() + s.values.size_bits()));
        }
        if let Some(l) = &self.lcp {
            v.push(("lcp", l.size_bits()));
        }
        v
    }
}

impl Encode for SequenceIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        codec::put_usize(out, self.n);
        self.bwt.encode(out);
        let c: Vec<u64> = self.c_table.iter().map(|&x| x as u64).collect();
        codec::put_u64s(out, &c);
        match &self.samples {
            Some(s) => {
                codec::put_u8(out, 1);
                codec::put_usize(out, s.rate);
                s.marked.encode(out);
                s.values.encode(out);
            }
            None => codec::put_u8(out, 0),
        }
        match &self.lcp {
            Some(l) => {
                codec::put_u8(out, 1);
                l.encode(out);
            }
            None => codec::put_u8(out, 0),
        }
    }
}

impl Decode for SequenceIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.usize()?;
        let bwt = WaveletMatrix::decode(r)?;
        let c_table: Vec<usize> = r.u64s()?.into_iter().map(|x| x as usize).collect();
        let samples = match r.u8()? {
            0 => None,
            1 => {
                let rate = r.usize()?;
                let marked = RankSelectBitVector::decode(r)?;
                let values = CompressedIntegerArray::decode(r)?;
                if rate == 0 || marked.len() != n || marked.count_ones() != values.len() {
                    return Err(codec::corrupt("SA sample shape mismatch"));
                }
                Some(SaSamples { rate, marked, values })
            }
            f => return Err(codec::corrupt(format!("bad sample flag {f}"))),
        };
        let lcp = match r.u8()? {
            0 => None,
            1 => Some(LcpSupport::decode(r)?),
            f => return Err(codec::corrupt(format!("bad lcp flag {f}"))),
        };
        if n == 0
            || bwt.len() != n
            || c_table.len() != bwt.alphabet_size() as usize + 1
            || c_table.first() != Some(&0)
            || c_table.last() != Some(&n)
            || c_table.windows(2).any(|w| w[0] > w[1])
        {
            return Err(codec::corrupt("sequence index shape mismatch"));
        }
        Ok(SequenceIndex { n, bwt, c_table, samples, lcp })
    }
}
