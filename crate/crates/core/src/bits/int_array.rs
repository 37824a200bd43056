use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{out_of_range, Result};

/// Fixed-width bit-packed array of nonnegative integers.
///
/// Every entry uses `ceil(log2(max + 1))` bits. Public access is 1-based via
/// [`access`](Self::access); [`get`](Self::get) is the 0-based fast path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedIntegerArray {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

impl CompressedIntegerArray {
    pub fn from_slice(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::with_width(values, bit_width(max))
    }

    pub fn with_width(values: &[u64], width: u32) -> Self {
        assert!(width <= 64);
        let mut words = vec![0u64; (values.len() * width as usize).div_ceil(64)];
        for (i, &v) in values.iter().enumerate() {
            debug_assert!(width == 64 || v >> width == 0, "value {v} does not fit {width} bits");
            write_bits(&mut words, i * width as usize, width, v);
        }
        CompressedIntegerArray { words, width, len: values.len() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Value at 0-based index `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} beyond length {}", self.len);
        read_bits(&self.words, i * self.width as usize, self.width)
    }

    /// Value at 1-based index `i`.
    pub fn access(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.len {
            return Err(out_of_range(i, 1, self.len));
        }
        Ok(self.get(i - 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn size_bits(&self) -> usize {
        64 * self.words.len() + 64 + 32
    }
}

pub(crate) fn bit_width(max: u64) -> u32 {
    64 - max.leading_zeros()
}

#[inline]
fn read_bits(words: &[u64], bit: usize, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    let (w, off) = (bit / 64, (bit % 64) as u32);
    let mut v = words[w] >> off;
    if off + width > 64 {
        v |= words[w + 1] << (64 - off);
    }
    if width == 64 {
        v
    } else {
        v & ((1u64 << width) - 1)
    }
}

fn write_bits(words: &mut [u64], bit: usize, width: u32, v: u64) {
    if width == 0 {
        return;
    }
    let (w, off) = (bit / 64, (bit % 64) as u32);
    words[w] |= v << off;
    if off + width > 64 {
        words[w + 1] |= v >> (64 - off);
    }
}

impl Encode for CompressedIntegerArray {
    fn encode(&self, out: &mut Vec<u8>) {
        codec::put_usize(out, self.len);
        codec::put_u32(out, self.width);
        codec::put_u64s(out, &self.words);
    }
}

impl Decode for CompressedIntegerArray {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let width = r.u32()?;
        let words = r.u64s()?;
        if width > 64 || Some(words.len()) != len.checked_mul(width as usize).map(|b| b.div_ceil(64)) {
            return Err(codec::corrupt("integer array shape mismatch"));
        }
        Ok(CompressedIntegerArray { words, width, len })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sample_lengths() {
        let l = CompressedIntegerArray::from_slice(&[1, 2, 2, 2, 3, 4]);
        assert_eq!(l.access(4), Ok(2));
        assert_eq!(l.access(6), Ok(4));
        assert!(l.access(0).is_err());
        assert!(l.access(7).is_err());
        assert_eq!(l.width(), 3);
    }

    #[test]
    fn singleton_and_zero_width() {
        assert_eq!(CompressedIntegerArray::from_slice(&[7]).access(1), Ok(7));
        let zeros = CompressedIntegerArray::from_slice(&[0, 0, 0]);
        assert_eq!(zeros.width(), 0);
        assert_eq!(zeros.iter().collect::<Vec<_>>(), vec![0, 0, 0]);
    }

    proptest! {
        #[test]
        fn roundtrip(values in proptest::collection::vec(0u64..=u32::MAX as u64, 0..500), shift in 0u32..32) {
            let values: Vec<u64> = values.into_iter().map(|v| v >> shift).collect();
            let arr = CompressedIntegerArray::from_slice(&values);
            prop_assert_eq!(arr.iter().collect::<Vec<_>>(), values.clone());
            let mut out = Vec::new();
            arr.encode(&mut out);
            let back = CompressedIntegerArray::decode(&mut Reader::new(&out)).unwrap();
            prop_assert_eq!(back, arr);
        }

        #[test]
        fn full_width(values in proptest::collection::vec(any::<u64>(), 1..50)) {
            let arr = CompressedIntegerArray::from_slice(&values);
            prop_assert_eq!(arr.iter().collect::<Vec<_>>(), values);
        }
    }
}
