//! Static 2-D point set with orthogonal range reporting.

use crate::bits::CompressedIntegerArray;
use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::suffix::WaveletMatrix;

/// Points with pairwise distinct x and pairwise distinct y. Stored sorted by
/// x, with a wavelet matrix over the y sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGrid {
    xs: CompressedIntegerArray,
    ys: WaveletMatrix,
}

impl PointGrid {
    pub fn build(points: &[(u32, u32)]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Argument("duplicate x coordinate".into()));
        }
        let mut ys: Vec<u32> = pts.iter().map(|p| p.1).collect();
        let max_y = ys.iter().copied().max().unwrap_or(0);
        ys.sort_unstable();
        if ys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument("duplicate y coordinate".into()));
        }
        let xs: Vec<u64> = pts.iter().map(|p| p.0 as u64).collect();
        let ys: Vec<u32> = pts.iter().map(|p| p.1).collect();
        Ok(PointGrid { xs: CompressedIntegerArray::from_slice(&xs), ys: WaveletMatrix::new(&ys, max_y + 1) })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Storage ranks (0-based, x order) of points with x in `[x1, x2]`.
    fn x_span(&self, x1: u32, x2: u32) -> (usize, usize) {
        let lower = |v: u32| {
            let (mut lo, mut hi) = (0, self.xs.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                if self.xs.get(mid) < v as u64 {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        (lower(x1), if x2 == u32::MAX { self.xs.len() } else { lower(x2 + 1) })
    }

    /// Calls `f(x, y)` for every point in `[x1, x2] × [y1, y2]`.
    pub fn report_with(&self, x1: u32, x2: u32, y1: u32, y2: u32, mut f: impl FnMut(u32, u32)) {
        if x1 > x2 || y1 > y2 || self.is_empty() {
            return;
        }
        let (lo, hi) = self.x_span(x1, x2);
        let y2 = y2.min(self.ys.alphabet_size() - 1);
        self.ys.range_report(lo, hi, y1, y2, &mut |i, y| f(self.xs.get(i) as u32, y));
    }

    pub fn report(&self, x1: u32, x2: u32, y1: u32, y2: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        self.report_with(x1, x2, y1, y2, |x, y| out.push((x, y)));
        out
    }

    pub fn points(&self) -> Vec<(u32, u32)> {
        (0..self.len()).map(|i| (self.xs.get(i) as u32, self.ys.access(i))).collect()
    }

    pub fn size_bits(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.xs.size_bits() + self.ys.size_bits()
        }
    }
}

impl Encode for PointGrid {
    fn encode(&self, out: &mut Vec<u8>) {
        self.xs.encode(out);
        self.ys.encode(out);
    }
}

impl Decode for PointGrid {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let xs = CompressedIntegerArray::decode(r)?;
        let ys = WaveletMatrix::decode(r)?;
        if ys.len() != xs.len() || (1..xs.len()).any(|i| xs.get(i - 1) >= xs.get(i)) {
            return Err(codec::corrupt("grid shape mismatch"));
        }
        let mut seen: Vec<u32> = (0..ys.len()).map(|i| ys.access(i)).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(codec::corrupt("grid y coordinates repeat"));
        }
        Ok(PointGrid { xs, ys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
        v.sort();
        v
    }

    #[test]
    fn examples() {
        let g = PointGrid::build(&[(1, 2), (2, 1)]).unwrap();
        assert_eq!(g.report(1, 2, 1, 1), vec![(2, 1)]);
        let g = PointGrid::build(&[(1, 3), (2, 1), (3, 2)]).unwrap();
        assert_eq!(g.report(1, 2, 1, 2), vec![(2, 1)]);
        assert_eq!(sorted(g.report(1, 3, 1, 3)), vec![(1, 3), (2, 1), (3, 2)]);
        assert!(g.report(3, 1, 1, 3).is_empty());
        let e = PointGrid::build(&[]).unwrap();
        assert!(e.report(0, 100, 0, 100).is_empty());
        assert_eq!(e.size_bits(), 0);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(PointGrid::build(&[(1, 1), (1, 2)]), Err(Error::Argument(_))));
        assert!(matches!(PointGrid::build(&[(1, 1), (2, 1)]), Err(Error::Argument(_))));
    }

    fn perm_points(seed: u64, n: usize, universe: u32) -> Vec<(u32, u32)> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut xs: Vec<u32> = (1..=universe).collect();
        let mut ys = xs.clone();
        xs.shuffle(&mut rng);
        ys.shuffle(&mut rng);
        xs.into_iter().zip(ys).take(n).collect()
    }

    #[test]
    fn exhaustive_small_grids() {
        for seed in 0..20 {
            let pts = perm_points(seed, (seed as usize * 3) % 64 + 1, 70);
            let g = PointGrid::build(&pts).unwrap();
            for x1 in (0..72).step_by(5) {
                for x2 in (x1..72).step_by(7) {
                    for y1 in (0..72).step_by(6) {
                        for y2 in (y1..72).step_by(9) {
                            let want = sorted(
                                pts.iter()
                                    .copied()
                                    .filter(|&(x, y)| (x1..=x2).contains(&x) && (y1..=y2).contains(&y))
                                    .collect(),
                            );
                            assert_eq!(sorted(g.report(x1, x2, y1, y2)), want);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn matches_scan(seed in any::<u64>(), n in 0usize..512, x1 in 0u32..600, w in 0u32..600, y1 in 0u32..600, h in 0u32..600) {
            let pts = perm_points(seed, n, 520);
            let g = PointGrid::build(&pts).unwrap();
            let (x2, y2) = (x1 + w, y1 + h);
            let want = sorted(pts.iter().copied().filter(|&(x, y)| (x1..=x2).contains(&x) && (y1..=y2).contains(&y)).collect());
            let got = sorted(g.report(x1, x2, y1, y2));
            // Shrinking the rectangle can only drop points.
            let inner = g.report(x1, x1 + w / 2, y1, y1 + h / 2).len();
            prop_assert!(inner <= got.len());
            prop_assert_eq!(got, want);
        }
    }
}
