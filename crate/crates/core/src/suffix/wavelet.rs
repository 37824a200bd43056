//! Wavelet matrix: a level-wise wavelet tree with one bit vector per level.

use crate::bits::{bit_width, BitVecBuilder, RankSelectBitVector};
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletMatrix {
    len: usize,
    alphabet_size: u32,
    levels: Vec<RankSelectBitVector>,
    /// Zeros on each level; ones are stably moved after them.
    zeros: Vec<usize>,
    /// Where each symbol's run starts on the bottom level.
    starts: Vec<usize>,
}

impl WaveletMatrix {
    /// Builds over `seq`, whose values must be `< alphabet_size`.
    pub fn new(seq: &[u32], alphabet_size: u32) -> Self {
        let depth = bit_width(alphabet_size.saturating_sub(1) as u64).max(1) as usize;
        let mut cur: Vec<u32> = seq.to_vec();
        let mut levels = Vec::with_capacity(depth);
        let mut zeros = Vec::with_capacity(depth);
        let mut left = Vec::with_capacity(seq.len());
        let mut right = Vec::with_capacity(seq.len());
        for l in 0..depth {
            let shift = depth - 1 - l;
            let mut b = BitVecBuilder::with_len(cur.len());
            left.clear();
            right.clear();
            for (i, &v) in cur.iter().enumerate() {
                assert!(v < alphabet_size, "symbol {v} outside alphabet of size {alphabet_size}");
                if (v >> shift) & 1 == 1 {
                    b.set(i, true);
                    right.push(v);
                } else {
                    left.push(v);
                }
            }
            zeros.push(left.len());
            levels.push(b.build());
            cur.clear();
            cur.extend_from_slice(&left);
            cur.extend_from_slice(&right);
        }
        let mut wm = WaveletMatrix { len: seq.len(), alphabet_size, levels, zeros, starts: Vec::new() };
        // Mapping position 0 down the levels lands on the start of each
        // symbol's bottom run (or its insertion point when absent).
        wm.starts = (0..alphabet_size).map(|c| wm.descend(c, 0)).collect();
        wm
    }

    #[inline]
    fn descend(&self, c: u32, i: usize) -> usize {
        let mut e = i;
        let depth = self.depth();
        for (l, bv) in self.levels.iter().enumerate() {
            e = if (c >> (depth - 1 - l)) & 1 == 1 { self.zeros[l] + bv.rank1(e) } else { bv.rank0(e) };
        }
        e
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Occurrences of `c` among the first `i` elements.
    #[inline]
    pub fn rank(&self, c: u32, i: usize) -> usize {
        if c >= self.alphabet_size {
            return 0;
        }
        self.descend(c, i) - self.starts[c as usize]
    }

    /// Element at 0-based index `i` together with its occurrences before `i`.
    #[inline]
    pub fn access_rank(&self, i: usize) -> (u32, usize) {
        let mut pos = i;
        let mut sym = 0u32;
        for (l, bv) in self.levels.iter().enumerate() {
            let bit = bv.get(pos);
            sym = (sym << 1) | bit as u32;
            pos = if bit { self.zeros[l] + bv.rank1(pos) } else { bv.rank0(pos) };
        }
        (sym, pos - self.starts[sym as usize])
    }

    pub fn access(&self, i: usize) -> u32 {
        self.access_rank(i).0
    }

    /// Calls `f(index, value)` for every 0-based `index` in `lo..hi` whose
    /// value lies in `vlo..=vhi`.
    pub fn range_report(&self, lo: usize, hi: usize, vlo: u32, vhi: u32, f: &mut impl FnMut(usize, u32)) {
        if lo >= hi || vlo > vhi {
            return;
        }
        self.report_rec(0, lo, hi, 0, vlo, vhi, f);
    }

    #[allow(clippy::too_many_arguments)]
    fn report_rec(
        &self,
        l: usize,
        s: usize,
        e: usize,
        prefix: u32,
        vlo: u32,
        vhi: u32,
        f: &mut impl FnMut(usize, u32),
    ) {
        if s >= e {
            return;
        }
        let depth = self.depth();
        let rem = (depth - l) as u32;
        let node_lo = (prefix as u64) << rem;
        let node_hi = node_lo + (1u64 << rem) - 1;
        if node_hi < vlo as u64 || node_lo > vhi as u64 {
            return;
        }
        if l == depth {
            for p in s..e {
                f(self.trace_up(p, prefix), prefix);
            }
            return;
        }
        let bv = &self.levels[l];
        let (s0, e0) = (bv.rank0(s), bv.rank0(e));
        self.report_rec(l + 1, s0, e0, prefix << 1, vlo, vhi, f);
        let z = self.zeros[l];
        self.report_rec(l + 1, z + (s - s0), z + (e - e0), (prefix << 1) | 1, vlo, vhi, f);
    }

    /// Original index of bottom-level position `p` holding value `v`.
    fn trace_up(&self, mut p: usize, v: u32) -> usize {
        let depth = self.depth();
        for l in (0..depth).rev() {
            let bv = &self.levels[l];
            p = if (v >> (depth - 1 - l)) & 1 == 1 {
                bv.select1(p - self.zeros[l] + 1).unwrap() - 1
            } else {
                bv.select0(p + 1).unwrap() - 1
            };
        }
        p
    }

    pub fn size_bits(&self) -> usize {
        self.levels.iter().map(|b| b.size_bits()).sum::<usize>() + 64 * (self.zeros.len() + self.starts.len() + 2)
    }
}

impl Encode for WaveletMatrix {
    fn encode(&self, out: &mut Vec<u8>) {
        codec::put_usize(out, self.len);
        codec::put_u32(out, self.alphabet_size);
        codec::put_usize(out, self.levels.len());
        for bv in &self.levels {
            bv.encode(out);
        }
        let zeros: Vec<u64> = self.zeros.iter().map(|&z| z as u64).collect();
        codec::put_u64s(out, &zeros);
        let starts: Vec<u64> = self.starts.iter().map(|&s| s as u64).collect();
        codec::put_u64s(out, &starts);
    }
}

impl Decode for WaveletMatrix {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let alphabet_size = r.u32()?;
        let depth = r.usize()?;
        if depth > 32 {
            return Err(codec::corrupt("wavelet depth too large"));
        }
        let levels = (0..depth).map(|_| RankSelectBitVector::decode(r)).collect::<Result<Vec<_>>>()?;
        let zeros: Vec<usize> = r.u64s()?.into_iter().map(|z| z as usize).collect();
        let starts: Vec<usize> = r.u64s()?.into_iter().map(|s| s as usize).collect();
        let want_depth = bit_width(alphabet_size.saturating_sub(1) as u64).max(1) as usize;
        if depth != want_depth
            || zeros.len() != depth
            || starts.len() != alphabet_size as usize
            || levels.iter().zip(&zeros).any(|(b, &z)| b.len() != len || b.count_zeros() != z)
            || starts.iter().any(|&s| s > len)
        {
            return Err(codec::corrupt("wavelet matrix shape mismatch"));
        }
        let wm = WaveletMatrix { len, alphabet_size, levels, zeros, starts };
        if (0..alphabet_size).any(|c| wm.descend(c, 0) != wm.starts[c as usize]) {
            return Err(codec::corrupt("wavelet symbol starts mismatch"));
        }
        Ok(wm)
    }
}
