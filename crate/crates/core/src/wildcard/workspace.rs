use crate::suffix::{MsEntry, SuffixRange};

/// Per-query scratch space: the `W` bit rows of the Type 3 search plus the
/// matching-statistics and reverse-range buffers.
///
/// The rows are packed back to back, `rows * cols` bits in total. Rows carry
/// an epoch stamp; a row whose stamp is stale reads as all zeros and is
/// cleared on its first write, so `reset` touches nothing but the epoch
/// counter (and every stamp once per 255 resets).
#[derive(Debug, Clone, Default)]
pub struct TypeThreeWorkspace {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
    stamps: Vec<u8>,
    epoch: u8,
    pub(crate) ms: Vec<MsEntry>,
    pub(crate) rev: Vec<SuffixRange>,
    pub(crate) fwd: Vec<SuffixRange>,
}

impl TypeThreeWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Workspace for `rows` segments and patterns of length `cols`, all bits 0.
    pub fn with_shape(rows: usize, cols: usize) -> Self {
        let mut ws = Self::new();
        ws.prepare(rows, cols);
        ws
    }

    /// Makes every bit read 0, reshaping if needed.
    pub fn prepare(&mut self, rows: usize, cols: usize) {
        if rows != self.rows || cols != self.cols {
            self.rows = rows;
            self.cols = cols;
            self.bits = vec![0; (rows * cols).div_ceil(64)];
            self.stamps = vec![0; rows];
            self.epoch = 1;
        } else {
            self.reset();
        }
    }

    pub fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamps.fill(0);
            self.epoch = 1;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Bit `i` (1-based) of row `s` (0-based).
    #[inline]
    pub fn get(&self, s: usize, i: usize) -> bool {
        assert!(s < self.rows && (1..=self.cols).contains(&i), "workspace slot ({s}, {i}) out of range");
        if self.stamps[s] != self.epoch {
            return false;
        }
        let b = s * self.cols + i - 1;
        self.bits[b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, s: usize, i: usize) {
        assert!(s < self.rows && (1..=self.cols).contains(&i), "workspace slot ({s}, {i}) out of range");
        if self.stamps[s] != self.epoch {
            self.clear_row(s);
            self.stamps[s] = self.epoch;
        }
        let b = s * self.cols + i - 1;
        self.bits[b / 64] |= 1 << (b % 64);
    }

    fn clear_row(&mut self, s: usize) {
        let (mut lo, hi) = (s * self.cols, (s + 1) * self.cols);
        while lo < hi {
            let (w, off) = (lo / 64, lo % 64);
            let take = (64 - off).min(hi - lo);
            let mask = if take == 64 { u64::MAX } else { ((1u64 << take) - 1) << off };
            self.bits[w] &= !mask;
            lo += take;
        }
    }

    /// Heap bytes held by the bit rows and stamps.
    pub fn w_bytes(&self) -> usize {
        8 * self.bits.len() + self.stamps.len()
    }

    /// Every set `(row, bit)` pair.
    pub fn set_slots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in 0..self.rows {
            for i in 1..=self.cols {
                if self.get(s, i) {
                    out.push((s, i));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn fresh_reads_zero() {
        let ws = TypeThreeWorkspace::with_shape(7, 130);
        assert!(ws.set_slots().is_empty());
    }

    #[test]
    fn matches_plain_model() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let (rows, cols) = (9, 70);
        let mut ws = TypeThreeWorkspace::with_shape(rows, cols);
        let mut model = vec![vec![false; cols + 1]; rows];
        // Enough resets to wrap the epoch counter several times.
        for _ in 0..2000 {
            if rng.gen_bool(0.3) {
                ws.reset();
                model.iter_mut().for_each(|r| r.fill(false));
            }
            for _ in 0..rng.gen_range(0..6) {
                let (s, i) = (rng.gen_range(0..rows), rng.gen_range(1..=cols));
                ws.set(s, i);
                model[s][i] = true;
            }
            for _ in 0..8 {
                let (s, i) = (rng.gen_range(0..rows), rng.gen_range(1..=cols));
                assert_eq!(ws.get(s, i), model[s][i]);
            }
        }
    }

    #[test]
    fn reset_clears_random_slots() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut ws = TypeThreeWorkspace::with_shape(20, 40);
        for _ in 0..300 {
            ws.set(rng.gen_range(0..20), rng.gen_range(1..=40));
        }
        ws.reset();
        for _ in 0..64 {
            assert!(!ws.get(rng.gen_range(0..20), rng.gen_range(1..=40)));
        }
    }

    #[test]
    fn reshape_clears() {
        let mut ws = TypeThreeWorkspace::with_shape(2, 3);
        ws.set(1, 3);
        ws.prepare(3, 3);
        assert!(!ws.get(1, 3));
    }
}
