//! LCP array with a block-minimum directory, enough to climb from an SA
//! range to its parent lcp-interval during matching statistics.

use super::range::SuffixRange;
use crate::bits::min_tree::{MinTree, BLOCK};
use crate::bits::CompressedIntegerArray;
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpSupport {
    /// `lcp[r - 1]` = LCP of rows `r - 1` and `r` (1-based `r`); `lcp[0] = 0`.
    lcp: CompressedIntegerArray,
    mins: MinTree,
}

impl LcpSupport {
    pub fn new(lcp: &[u32]) -> Self {
        let values: Vec<u64> = lcp.iter().map(|&v| v as u64).collect();
        let lcp = CompressedIntegerArray::from_slice(&values);
        let mins = MinTree::from_values(lcp.len().max(1), |i| if i < lcp.len() { lcp.get(i) as u32 } else { 0 });
        LcpSupport { lcp, mins }
    }

    fn n(&self) -> usize {
        self.lcp.len()
    }

    /// LCP at 1-based row `r`; row `n + 1` reads as 0.
    #[inline]
    pub fn at(&self, r: usize) -> u32 {
        if r > self.n() {
            0
        } else {
            self.lcp.get(r - 1) as u32
        }
    }

    /// The parent lcp-interval of `range`, the SA range of a string of
    /// length `len`: returns its string length and rows.
    pub fn parent(&self, range: SuffixRange, len: usize) -> (usize, SuffixRange) {
        let up = self.at(range.lo).max(self.at(range.hi + 1));
        debug_assert!((up as usize) < len || len == 0);
        if up == 0 {
            return (0, SuffixRange::new(1, self.n()));
        }
        let lo = self.prev_less(range.lo, up).expect("row 1 has lcp 0");
        let hi = self.next_less(range.hi + 1, up).unwrap_or(self.n() + 1) - 1;
        (up as usize, SuffixRange::new(lo, hi))
    }

    /// Largest 1-based row `r <= from` with `lcp(r) < thr`.
    fn prev_less(&self, from: usize, thr: u32) -> Option<usize> {
        let from0 = from - 1;
        let start = from0 / BLOCK * BLOCK;
        if let Some(i) = (start..=from0).rev().find(|&i| (self.lcp.get(i) as u32) < thr) {
            return Some(i + 1);
        }
        let b = self.mins.prev_block_below(from0 / BLOCK, thr)?;
        let end = ((b + 1) * BLOCK).min(self.n());
        (b * BLOCK..end).rev().find(|&i| (self.lcp.get(i) as u32) < thr).map(|i| i + 1)
    }

    /// Smallest 1-based row `r >= from` with `lcp(r) < thr`; `None` if only
    /// the virtual row `n + 1` qualifies.
    fn next_less(&self, from: usize, thr: u32) -> Option<usize> {
        if from > self.n() {
            return None;
        }
        let from0 = from - 1;
        let end = ((from0 / BLOCK + 1) * BLOCK).min(self.n());
        if let Some(i) = (from0..end).find(|&i| (self.lcp.get(i) as u32) < thr) {
            return Some(i + 1);
        }
        let b = self.mins.next_block_below(from0 / BLOCK, thr)?;
        let end = ((b + 1) * BLOCK).min(self.n());
        (b * BLOCK..end).find(|&i| (self.lcp.get(i) as u32) < thr).map(|i| i + 1)
    }

    pub fn size_bits(&self) -> usize {
        self.lcp.size_bits() + self.mins.size_bits()
    }
}

impl Encode for LcpSupport {
    fn encode(&self, out: &mut Vec<u8>) {
        self.lcp.encode(out);
        self.mins.encode(out);
    }
}

impl Decode for LcpSupport {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let lcp = CompressedIntegerArray::decode(r)?;
        let mins = MinTree::decode(r)?;
        let rebuilt = MinTree::from_values(lcp.len().max(1), |i| if i < lcp.len() { lcp.get(i) as u32 } else { 0 });
        if rebuilt != mins {
            return Err(codec::corrupt("lcp directory mismatch"));
        }
        Ok(LcpSupport { lcp, mins })
    }
}
