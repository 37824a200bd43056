//! Balanced-parentheses sequence with `find_close`, `find_open` and
//! `enclose`, driven by excess minima per 64-symbol block.
//!
//! Positions are 1-based; an open parenthesis is a 1 bit. The excess after
//! position `x` is `E[x] = 2 * rank_open(x) - x`, with `E[0] = 0`.

use super::min_tree::{MinTree, BLOCK};
use super::rank_select::RankSelectBitVector;
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{out_of_range, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Paren {
    Open,
    Close,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedParentheses {
    bits: RankSelectBitVector,
    /// Minima of `E[x]` over `x` in each `BLOCK`-aligned chunk of `0..=len`.
    mins: MinTree,
}

impl BalancedParentheses {
    pub fn new(bits: RankSelectBitVector) -> Result<Self> {
        let mut e: i64 = 0;
        for b in bits.iter() {
            e += if b { 1 } else { -1 };
            if e < 0 {
                return Err(Error::Format("unbalanced parentheses: close without open".into()));
            }
        }
        if e != 0 {
            return Err(Error::Format(format!("unbalanced parentheses: {e} unclosed")));
        }
        let n = bits.len();
        let mut excess = Vec::with_capacity(n + 1);
        excess.push(0u32);
        for b in bits.iter() {
            let last = *excess.last().unwrap();
            excess.push(if b { last + 1 } else { last - 1 });
        }
        let mins = MinTree::from_values(n + 1, |x| excess[x]);
        Ok(BalancedParentheses { bits, mins })
    }

    /// Parses a string of `(` and `)`.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                other => Err(Error::Format(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<RankSelectBitVector>>()?;
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn pairs(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn is_open(&self, p: usize) -> bool {
        self.bits.get(p - 1)
    }

    #[inline]
    fn excess(&self, x: usize) -> u32 {
        (2 * self.bits.rank1(x) - x) as u32
    }

    pub fn rank(&self, kind: Paren, i: usize) -> Result<usize> {
        let opens = self.bits.try_rank1(i)?;
        Ok(match kind {
            Paren::Open => opens,
            Paren::Close => i - opens,
        })
    }

    pub fn select(&self, kind: Paren, j: usize) -> Option<usize> {
        match kind {
            Paren::Open => self.bits.select1(j),
            Paren::Close => self.bits.select0(j),
        }
    }

    pub(crate) fn rank_open(&self, i: usize) -> usize {
        self.bits.rank1(i)
    }

    pub(crate) fn select_open(&self, j: usize) -> Option<usize> {
        self.bits.select1(j)
    }

    pub(crate) fn select_close(&self, j: usize) -> Option<usize> {
        self.bits.select0(j)
    }

    fn check(&self, p: usize, want: Paren) -> Result<()> {
        if p == 0 || p > self.len() {
            return Err(out_of_range(p, 1, self.len()));
        }
        if (want == Paren::Open) != self.is_open(p) {
            return Err(Error::Argument(format!("position {p} is not an {want:?} parenthesis")));
        }
        Ok(())
    }

    /// Position of the close parenthesis matching the open one at `l`.
    pub fn find_close(&self, l: usize) -> Result<usize> {
        self.check(l, Paren::Open)?;
        Ok(self.close_of(l))
    }

    /// Position of the open parenthesis matching the close one at `r`.
    pub fn find_open(&self, r: usize) -> Result<usize> {
        self.check(r, Paren::Close)?;
        Ok(self.open_of(r))
    }

    /// Tightest pair strictly enclosing the pair opened at `l`.
    pub fn enclose(&self, l: usize) -> Result<Option<(usize, usize)>> {
        self.check(l, Paren::Open)?;
        Ok(self.parent_of(l))
    }

    pub(crate) fn close_of(&self, l: usize) -> usize {
        let thr = self.excess(l);
        self.fwd_less(l, thr).expect("balanced sequence")
    }

    pub(crate) fn open_of(&self, r: usize) -> usize {
        let thr = self.excess(r) + 1;
        self.bwd_less(r - 1, thr).expect("balanced sequence") + 1
    }

    pub(crate) fn parent_of(&self, l: usize) -> Option<(usize, usize)> {
        let e = self.excess(l - 1);
        if e == 0 {
            return None;
        }
        let p = self.bwd_less(l - 2, e).expect("positive excess has an opener") + 1;
        Some((p, self.close_of(p)))
    }

    /// Smallest `x >= from` with `E[x] < thr`.
    fn fwd_less(&self, from: usize, thr: u32) -> Option<usize> {
        let n = self.len();
        let mut x = from;
        let mut e = self.excess(x) as i64;
        let block_end = ((from / BLOCK + 1) * BLOCK).min(n + 1);
        loop {
            if e < thr as i64 {
                return Some(x);
            }
            if x + 1 >= block_end {
                break;
            }
            e += if self.bits.get(x) { 1 } else { -1 };
            x += 1;
        }
        let b = self.mins.next_block_below(from / BLOCK, thr)?;
        let mut x = b * BLOCK;
        let mut e = self.excess(x) as i64;
        while e >= thr as i64 {
            e += if self.bits.get(x) { 1 } else { -1 };
            x += 1;
        }
        Some(x)
    }

    /// Largest `x <= from` with `E[x] < thr`.
    fn bwd_less(&self, from: usize, thr: u32) -> Option<usize> {
        let mut x = from;
        let mut e = self.excess(x) as i64;
        let block_start = from / BLOCK * BLOCK;
        loop {
            if e < thr as i64 {
                return Some(x);
            }
            if x == block_start {
                break;
            }
            x -= 1;
            e -= if self.bits.get(x) { 1 } else { -1 };
        }
        let b = self.mins.prev_block_below(from / BLOCK, thr)?;
        debug_assert!(self.mins.block_min(b) < thr);
        let mut x = ((b + 1) * BLOCK - 1).min(self.len());
        let mut e = self.excess(x) as i64;
        while e >= thr as i64 {
            x -= 1;
            e -= if self.bits.get(x) { 1 } else { -1 };
        }
        Some(x)
    }

    pub fn size_bits(&self) -> usize {
        self.bits.size_bits() + self.mins.size_bits()
    }

    pub fn to_paren_string(&self) -> String {
        self.bits.iter().map(|b| if b { '(' } else { ')' }).collect()
    }
}

impl Encode for BalancedParentheses {
    fn encode(&self, out: &mut Vec<u8>) {
        self.bits.encode(out);
        self.mins.encode(out);
    }
}

impl Decode for BalancedParentheses {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let bits = RankSelectBitVector::decode(r)?;
        let mins = MinTree::decode(r)?;
        let bp = BalancedParentheses::new(bits).map_err(|e| codec::corrupt(e.to_string()))?;
        if bp.mins != mins {
            return Err(codec::corrupt("parentheses excess directory mismatch"));
        }
        Ok(bp)
    }
}
