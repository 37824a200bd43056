use crate::bits::CompressedIntegerArray;
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{out_of_range, Result};
use crate::suffix::SuffixRange;

/// Per-segment data in position order, segments indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentTable {
    /// 1-based start in the text.
    x: CompressedIntegerArray,
    len: CompressedIntegerArray,
    /// Size of the group following the segment; 0 for the last one.
    k: CompressedIntegerArray,
    rsa: [CompressedIntegerArray; 2],
    rev_rsa: [CompressedIntegerArray; 2],
}

pub(crate) struct SegmentRow {
    pub x: usize,
    pub len: usize,
    pub k: usize,
    pub rsa: SuffixRange,
    pub rev_rsa: SuffixRange,
}

fn pack(v: impl Iterator<Item = usize>) -> CompressedIntegerArray {
    CompressedIntegerArray::from_slice(&v.map(|x| x as u64).collect::<Vec<_>>())
}

impl SegmentTable {
    pub(crate) fn new(rows: &[SegmentRow]) -> Self {
        SegmentTable {
            x: pack(rows.iter().map(|r| r.x)),
            len: pack(rows.iter().map(|r| r.len)),
            k: pack(rows.iter().map(|r| r.k)),
            rsa: [pack(rows.iter().map(|r| r.rsa.lo)), pack(rows.iter().map(|r| r.rsa.hi))],
            rev_rsa: [pack(rows.iter().map(|r| r.rev_rsa.lo)), pack(rows.iter().map(|r| r.rev_rsa.hi))],
        }
    }

    /// Number of segments, `d + 1`.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    #[inline]
    pub fn x(&self, s: usize) -> usize {
        self.x.get(s) as usize
    }

    #[inline]
    pub fn seg_len(&self, s: usize) -> usize {
        self.len.get(s) as usize
    }

    #[inline]
    pub fn k(&self, s: usize) -> usize {
        self.k.get(s) as usize
    }

    #[inline]
    pub fn rsa(&self, s: usize) -> SuffixRange {
        SuffixRange::new(self.rsa[0].get(s) as usize, self.rsa[1].get(s) as usize)
    }

    #[inline]
    pub fn rev_rsa(&self, s: usize) -> SuffixRange {
        SuffixRange::new(self.rev_rsa[0].get(s) as usize, self.rev_rsa[1].get(s) as usize)
    }

    /// Text length without the sentinel.
    pub fn text_len(&self) -> usize {
        let last = self.len() - 1;
        self.x(last) + self.seg_len(last) - 1
    }

    /// Groups intersecting `[p, p + m - 1]`. Group `s` covers
    /// `[x_s + l_s, x_{s+1} - 1]`; both ends increase with `s`.
    pub fn overlap_group_count(&self, p: usize, m: usize) -> Result<usize> {
        let n = self.text_len();
        if p == 0 || m == 0 || p + m - 1 > n {
            return Err(out_of_range(p + m.max(1) - 1, 1, n));
        }
        let e = p + m - 1;
        let groups = self.len() - 1;
        // Groups starting at or before `e`.
        let started = partition(groups, |s| self.x(s) + self.seg_len(s) <= e);
        // Groups ending before `p`.
        let ended = partition(groups, |s| self.x(s + 1) - 1 < p);
        Ok(started - ended)
    }

    pub fn size_bits(&self) -> usize {
        [&self.x, &self.len, &self.k, &self.rsa[0], &self.rsa[1], &self.rev_rsa[0], &self.rev_rsa[1]]
            .iter()
            .map(|a| a.size_bits())
            .sum()
    }
}

/// First index in `0..len` where `pred` turns false; `pred` must be monotone.
fn partition(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

impl Encode for SegmentTable {
    fn encode(&self, out: &mut Vec<u8>) {
        for a in [&self.x, &self.len, &self.k, &self.rsa[0], &self.rsa[1], &self.rev_rsa[0], &self.rev_rsa[1]] {
            a.encode(out);
        }
    }
}

impl Decode for SegmentTable {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let mut next = || CompressedIntegerArray::decode(r);
        let t =
            SegmentTable { x: next()?, len: next()?, k: next()?, rsa: [next()?, next()?], rev_rsa: [next()?, next()?] };
        let d1 = t.x.len();
        let shapes = [&t.len, &t.k, &t.rsa[0], &t.rsa[1], &t.rev_rsa[0], &t.rev_rsa[1]];
        if d1 == 0 || shapes.iter().any(|a| a.len() != d1) || t.x(0) != 1 || t.k(d1 - 1) != 0 {
            return Err(codec::corrupt("segment table shape mismatch"));
        }
        for s in 0..d1 {
            if t.seg_len(s) == 0 || t.rsa(s).is_empty() || t.rev_rsa(s).is_empty() {
                return Err(codec::corrupt("empty segment entry"));
            }
            if s + 1 < d1 && (t.k(s) == 0 || t.x(s + 1) != t.x(s) + t.seg_len(s) + t.k(s)) {
                return Err(codec::corrupt("segment positions inconsistent"));
            }
        }
        Ok(t)
    }
}
