//! Plain bitmap with a superblock rank directory and sampled select hints.
//!
//! Positions follow the usual 1-based convention of the index layers above:
//! `rank1(i)` counts ones in positions `1..=i` (bits `0..i`), and `select1(j)`
//! returns the 1-based position of the `j`-th one.

use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{out_of_range, Result};

const SUPER_BITS: usize = 512;
const WORDS_PER_SUPER: usize = SUPER_BITS / 64;
const SELECT_SAMPLE: usize = 512;

/// Incremental builder for [`RankSelectBitVector`].
#[derive(Debug, Default, Clone)]
pub struct BitVecBuilder {
    words: Vec<u64>,
    len: usize,
}

impl BitVecBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_len(len: usize) -> Self {
        BitVecBuilder { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Sets the bit at 0-based index `i`.
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} beyond length {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn build(self) -> RankSelectBitVector {
        RankSelectBitVector::from_words(self.words, self.len)
    }
}

impl FromIterator<bool> for RankSelectBitVector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut b = BitVecBuilder::new();
        for bit in iter {
            b.push(bit);
        }
        b.build()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSelectBitVector {
    words: Vec<u64>,
    len: usize,
    /// `supers[s]` = ones before superblock `s`; one trailing total entry.
    supers: Vec<u64>,
    /// Superblock holding the `(t * SELECT_SAMPLE + 1)`-th one.
    hints1: Vec<u32>,
    /// Same for zeros.
    hints0: Vec<u32>,
}

impl RankSelectBitVector {
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let n_super = words.len().div_ceil(WORDS_PER_SUPER);
        let mut supers = Vec::with_capacity(n_super + 1);
        let mut hints1 = Vec::new();
        let mut hints0 = Vec::new();
        let mut ones = 0u64;
        for s in 0..n_super {
            supers.push(ones);
            let lo = s * WORDS_PER_SUPER;
            let hi = (lo + WORDS_PER_SUPER).min(words.len());
            let block_ones: u64 = words[lo..hi].iter().map(|w| w.count_ones() as u64).sum();
            let block_bits = ((hi * 64).min(len) - lo * 64) as u64;
            let zeros_before = (lo * 64) as u64 - ones;
            // Record every sample ordinal that falls inside this superblock.
            while ((hints1.len() * SELECT_SAMPLE) as u64) < ones + block_ones {
                hints1.push(s as u32);
            }
            while ((hints0.len() * SELECT_SAMPLE) as u64) < zeros_before + block_bits - block_ones {
                hints0.push(s as u32);
            }
            ones += block_ones;
        }
        supers.push(ones);
        RankSelectBitVector { words, len, supers, hints1, hints0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        *self.supers.last().unwrap() as usize
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Bit at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Number of ones among positions `1..=i`. Panics if `i > len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank index {i} beyond length {}", self.len);
        let w = i / 64;
        let s = w / WORDS_PER_SUPER;
        let mut r = self.supers[s] as usize;
        for k in s * WORDS_PER_SUPER..w {
            r += self.words[k].count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[w] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn try_rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(out_of_range(i, 0, self.len));
        }
        Ok(self.rank1(i))
    }

    /// 1-based position of the `j`-th one, or `None` when `j` is zero or
    /// exceeds the number of ones.
    pub fn select1(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.count_ones() {
            return None;
        }
        Some(self.select_impl::<true>(j))
    }

    /// 1-based position of the `j`-th zero.
    pub fn select0(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.count_zeros() {
            return None;
        }
        Some(self.select_impl::<false>(j))
    }

    fn ones_before_super(&self, s: usize) -> usize {
        self.supers[s] as usize
    }

    fn count_before_super<const ONE: bool>(&self, s: usize) -> usize {
        if ONE {
            self.ones_before_super(s)
        } else {
            (s * SUPER_BITS).min(self.len) - self.ones_before_super(s)
        }
    }

    fn select_impl<const ONE: bool>(&self, j: usize) -> usize {
        let hints = if ONE { &self.hints1 } else { &self.hints0 };
        let t = (j - 1) / SELECT_SAMPLE;
        let mut lo = hints[t] as usize;
        let mut hi = hints.get(t + 1).map(|&h| h as usize + 1).unwrap_or(self.supers.len() - 1);
        // Last superblock whose preceding count is < j.
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.count_before_super::<ONE>(mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = j - self.count_before_super::<ONE>(lo);
        let mut w = lo * WORDS_PER_SUPER;
        loop {
            let word = if ONE { self.words[w] } else { !self.words[w] };
            let c = word.count_ones() as usize;
            if c >= remaining {
                return w * 64 + select_in_word(word, remaining) + 1;
            }
            remaining -= c;
            w += 1;
        }
    }

    /// Storage footprint in bits, directories included.
    pub fn size_bits(&self) -> usize {
        64 * (self.words.len() + self.supers.len() + 1) + 32 * (self.hints1.len() + self.hints0.len())
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

/// 0-based index of the `k`-th (1-based) set bit of `word`.
#[inline]
fn select_in_word(mut word: u64, k: usize) -> usize {
    for _ in 1..k {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}

impl Encode for RankSelectBitVector {
    fn encode(&self, out: &mut Vec<u8>) {
        codec::put_usize(out, self.len);
        codec::put_u64s(out, &self.words);
        codec::put_u64s(out, &self.supers);
        codec::put_u32s(out, &self.hints1);
        codec::put_u32s(out, &self.hints0);
    }
}

impl Decode for RankSelectBitVector {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let words = r.u64s()?;
        let supers = r.u64s()?;
        let hints1 = r.u32s()?;
        let hints0 = r.u32s()?;
        if words.len() != len.div_ceil(64) {
            return Err(codec::corrupt("bit vector word count mismatch"));
        }
        // Directories are cheap to recompute; doing so doubles as validation.
        let rebuilt = RankSelectBitVector::from_words(words, len);
        if rebuilt.supers != supers || rebuilt.hints1 != hints1 || rebuilt.hints0 != hints0 {
            return Err(codec::corrupt("bit vector directory mismatch"));
        }
        Ok(rebuilt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_b() -> RankSelectBitVector {
        let ones = [8, 12, 14, 15, 16, 17, 20, 21];
        (1..=21).map(|p| ones.contains(&p)).collect()
    }

    #[test]
    fn sample_b_rank_select() {
        let b = sample_b();
        assert_eq!(b.rank1(14), 3);
        assert_eq!(b.rank1(21), 8);
        assert_eq!(b.rank1(0), 0);
        assert_eq!(b.select1(3), Some(14));
        assert_eq!(b.select1(1), Some(8));
        assert_eq!(b.select1(9), None);
        assert_eq!(b.select1(0), None);
        assert!(b.try_rank1(22).is_err());
    }

    #[test]
    fn empty_vector() {
        let b: RankSelectBitVector = std::iter::empty().collect();
        assert_eq!(b.rank1(0), 0);
        assert_eq!(b.select1(1), None);
        assert_eq!(b.select0(1), None);
    }

    fn check_against_scan(bits: &[bool]) {
        let bv: RankSelectBitVector = bits.iter().copied().collect();
        let mut ones = Vec::new();
        let mut zeros = Vec::new();
        let mut r = 0;
        for (i, &b) in bits.iter().enumerate() {
            assert_eq!(bv.rank1(i), r);
            if b {
                r += 1;
                ones.push(i + 1);
            } else {
                zeros.push(i + 1);
            }
        }
        assert_eq!(bv.rank1(bits.len()), r);
        for (k, &p) in ones.iter().enumerate() {
            assert_eq!(bv.select1(k + 1), Some(p));
        }
        for (k, &p) in zeros.iter().enumerate() {
            assert_eq!(bv.select0(k + 1), Some(p));
        }
        assert_eq!(bv.select1(ones.len() + 1), None);
    }

    #[test]
    fn exhaustive_small() {
        for len in 0..=12usize {
            for mask in 0u32..(1 << len) {
                let bits: Vec<bool> = (0..len).map(|i| mask >> i & 1 == 1).collect();
                check_against_scan(&bits);
            }
        }
    }

    #[test]
    fn dense_and_sparse_runs() {
        check_against_scan(&vec![true; 5000]);
        check_against_scan(&vec![false; 5000]);
        let sparse: Vec<bool> = (0..70_000).map(|i| i % 4099 == 7).collect();
        check_against_scan(&sparse);
    }

    proptest! {
        #[test]
        fn matches_linear_scan(bits in proptest::collection::vec(any::<bool>(), 0..(1usize << 16)), density in 0u8..4) {
            // Skew the density so both very sparse and very dense vectors show up.
            let bits: Vec<bool> = bits.chunks(4).flat_map(|c| {
                let on = c.iter().filter(|&&b| b).count() as u8 > density;
                c.iter().map(move |&b| b && on)
            }).collect();
            check_against_scan(&bits);
        }

        #[test]
        fn rank_select_inverse(bits in proptest::collection::vec(any::<bool>(), 1..4096)) {
            let bv: RankSelectBitVector = bits.iter().copied().collect();
            for j in 1..=bv.count_ones() {
                let p = bv.select1(j).unwrap();
                prop_assert_eq!(bv.rank1(p), j);
            }
            for i in 1..=bits.len() {
                let r = bv.rank1(i);
                if r >= 1 {
                    prop_assert!(bv.select1(r).unwrap() <= i);
                }
            }
        }

        #[test]
        fn codec_roundtrip(bits in proptest::collection::vec(any::<bool>(), 0..3000)) {
            let bv: RankSelectBitVector = bits.iter().copied().collect();
            let mut out = Vec::new();
            bv.encode(&mut out);
            let back = RankSelectBitVector::decode(&mut Reader::new(&out)).unwrap();
            prop_assert_eq!(back, bv);
        }
    }
}
