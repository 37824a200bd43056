//! Segment tree over per-block minima. Used to find the nearest block, left
//! or right of a given one, containing a value below a threshold; callers
//! scan inside blocks themselves.

use crate::codec::{self, Decode, Encode, Reader};
use crate::error::Result;

pub(crate) const BLOCK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MinTree {
    leaves: usize,
    blocks: usize,
    tree: Vec<u32>,
}

impl MinTree {
    pub(crate) fn new(block_mins: &[u32]) -> Self {
        let leaves = block_mins.len().next_power_of_two().max(1);
        let mut tree = vec![u32::MAX; 2 * leaves];
        tree[leaves..leaves + block_mins.len()].copy_from_slice(block_mins);
        for v in (1..leaves).rev() {
            tree[v] = tree[2 * v].min(tree[2 * v + 1]);
        }
        MinTree { leaves, blocks: block_mins.len(), tree }
    }

    /// Minimum values of consecutive `BLOCK`-sized chunks of `values`.
    pub(crate) fn from_values(len: usize, value: impl Fn(usize) -> u32) -> Self {
        let mins: Vec<u32> = (0..len.div_ceil(BLOCK))
            .map(|b| (b * BLOCK..((b + 1) * BLOCK).min(len)).map(&value).min().unwrap())
            .collect();
        Self::new(&mins)
    }

    pub(crate) fn block_min(&self, b: usize) -> u32 {
        self.tree[self.leaves + b]
    }

    /// Largest block index `< b` whose minimum is `< thr`.
    pub(crate) fn prev_block_below(&self, b: usize, thr: u32) -> Option<usize> {
        let mut v = self.leaves + b;
        while v > 1 {
            if v & 1 == 1 && self.tree[v - 1] < thr {
                v -= 1;
                while v < self.leaves {
                    v = if self.tree[2 * v + 1] < thr { 2 * v + 1 } else { 2 * v };
                }
                return Some(v - self.leaves);
            }
            v /= 2;
        }
        None
    }

    /// Smallest block index `> b` whose minimum is `< thr`.
    pub(crate) fn next_block_below(&self, b: usize, thr: u32) -> Option<usize> {
        let mut v = self.leaves + b;
        while v > 1 {
            if v & 1 == 0 && self.tree[v + 1] < thr {
                v += 1;
                while v < self.leaves {
                    v = if self.tree[2 * v] < thr { 2 * v } else { 2 * v + 1 };
                }
                let found = v - self.leaves;
                return (found < self.blocks).then_some(found);
            }
            v /= 2;
        }
        None
    }

    pub(crate) fn size_bits(&self) -> usize {
        32 * self.tree.len() + 128
    }
}

impl Encode for MinTree {
    fn encode(&self, out: &mut Vec<u8>) {
        codec::put_usize(out, self.blocks);
        codec::put_u32s(out, &self.tree[self.leaves..self.leaves + self.blocks]);
    }
}

impl Decode for MinTree {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let blocks = r.usize()?;
        let mins = r.u32s()?;
        if mins.len() != blocks {
            return Err(codec::corrupt("min tree block count mismatch"));
        }
        Ok(MinTree::new(&mins))
    }
}
