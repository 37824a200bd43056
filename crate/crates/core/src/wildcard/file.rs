//! On-disk format: a fixed header followed by five length-prefixed sections
//! (forward dictionary, reverse index, segment table, Π, grids) and a CRC-32
//! of everything before it. Integers are little-endian.

use super::{StartRank, WildcardIndex};
use crate::bits::CompressedIntegerArray;
use crate::codec::{self, Decode, Encode, Reader};
use crate::dictionary::FullTextDictionary;
use crate::error::{Error, Result};
use crate::grid::PointGrid;
use crate::suffix::{Alphabet, SequenceIndex};

pub const MAGIC: &[u8; 4] = b"WCIX";
pub const FORMAT_VERSION: u32 = 1;

pub const SECTION_NAMES: [&str; 5] = ["forward_dictionary", "reverse_index", "segment_table", "pi", "grid"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexStats {
    pub n: usize,
    pub sigma: usize,
    pub d: usize,
    pub k: usize,
    pub header_bits: usize,
    /// Section length prefixes and the checksum.
    pub framing_bits: usize,
    /// Serialized size of each section.
    pub sections: Vec<(&'static str, usize)>,
    /// In-memory size of each component.
    pub components: Vec<(&'static str, usize)>,
    pub total_bits: usize,
}

impl IndexStats {
    pub fn payload_bits(&self) -> usize {
        self.sections.iter().map(|s| s.1).sum()
    }

    pub fn bits_per_symbol(&self) -> f64 {
        self.total_bits as f64 / self.n.max(1) as f64
    }
}

impl WildcardIndex {
    fn header(&self) -> Vec<u8> {
        let mut h = Vec::new();
        h.extend_from_slice(MAGIC);
        codec::put_u32(&mut h, FORMAT_VERSION);
        codec::put_usize(&mut h, self.n());
        codec::put_u32(&mut h, self.alphabet.sigma() as u32);
        codec::put_usize(&mut h, self.d());
        codec::put_usize(&mut h, self.k_total());
        self.alphabet.encode(&mut h);
        codec::put_u8(&mut h, self.wildcard);
        codec::put_usize(&mut h, self.sample_rate);
        h
    }

    fn sections(&self) -> [Vec<u8>; 5] {
        let mut s: [Vec<u8>; 5] = Default::default();
        self.fwd.encode(&mut s[0]);
        self.rev.encode(&mut s[1]);
        self.seg.encode(&mut s[2]);
        self.pi.encode(&mut s[3]);
        for (g, grid) in &self.grids {
            codec::put_usize(&mut s[4], *g);
            grid.encode(&mut s[4]);
        }
        s
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.header();
        for s in self.sections() {
            codec::put_bytes(&mut out, &s);
        }
        let crc = crc32fast::hash(&out);
        codec::put_u32(&mut out, crc);
        out
    }

    pub fn stats(&self) -> IndexStats {
        let header_bits = 8 * self.header().len();
        let sections: Vec<(&'static str, usize)> =
            SECTION_NAMES.iter().zip(self.sections()).map(|(&name, s)| (name, 8 * s.len())).collect();
        let framing_bits = 64 * sections.len() + 32;
        let total_bits = header_bits + framing_bits + sections.iter().map(|s| s.1).sum::<usize>();
        IndexStats {
            n: self.n(),
            sigma: self.alphabet.sigma(),
            d: self.d(),
            k: self.k_total(),
            header_bits,
            framing_bits,
            sections,
            components: self.component_bits(),
            total_bits,
        }
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        let mut r = Reader::new(buf);
        if buf.len() < 8 || r.take(4)? != MAGIC {
            return Err(Error::Corrupt("bad magic".into()));
        }
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::Corrupt(format!("unsupported format version {version}")));
        }
        let body = buf.len().checked_sub(4).filter(|&b| b >= 8).ok_or_else(|| codec::corrupt("truncated file"))?;
        let stored = u32::from_le_bytes(buf[body..].try_into().unwrap());
        if crc32fast::hash(&buf[..body]) != stored {
            return Err(codec::corrupt("checksum mismatch"));
        }
        let mut r = Reader::new(&buf[..body]);
        r.take(8)?;
        let n = r.usize()?;
        let sigma = r.u32()? as usize;
        let d = r.usize()?;
        let k = r.usize()?;
        let alphabet = <Alphabet as Decode>::decode(&mut r)?;
        let wildcard = r.u8()?;
        let sample_rate = r.usize()?;

        let mut section = || -> Result<Vec<u8>> { r.bytes() };
        let (s0, s1, s2, s3, s4) = (section()?, section()?, section()?, section()?, section()?);
        r.expect_end()?;

        fn whole<T: Decode>(bytes: &[u8]) -> Result<T> {
            let mut r = Reader::new(bytes);
            let v = T::decode(&mut r)?;
            r.expect_end()?;
            Ok(v)
        }
        let fwd: FullTextDictionary = whole(&s0)?;
        let rev: SequenceIndex = whole(&s1)?;
        let seg: super::SegmentTable = whole(&s2)?;
        let pi: CompressedIntegerArray = whole(&s3)?;
        let grids = {
            let mut r = Reader::new(&s4);
            let mut grids = Vec::new();
            while r.remaining() > 0 {
                let g = r.usize()?;
                grids.push((g, PointGrid::decode(&mut r)?));
            }
            grids
        };

        let mut seen = vec![false; pi.len()];
        for t in 0..pi.len() {
            match seen.get_mut(pi.get(t) as usize) {
                Some(v) if !*v => *v = true,
                _ => return Err(codec::corrupt("pi is not a permutation")),
            }
        }
        let ix = WildcardIndex {
            alphabet,
            wildcard,
            sample_rate,
            fwd,
            rev_starts: StartRank::new(&rev),
            rev,
            seg,
            pi,
            grids,
        };
        let consistent = ix.n() == n
            && ix.d() == d
            && ix.k_total() == k
            && ix.alphabet.sigma() == sigma
            && ix.alphabet.code(wildcard).is_none()
            && ix.fwd.index().n() == n + 1
            && ix.rev.n() == n + 1
            && ix.fwd.index().sample_rate() == Some(sample_rate)
            && ix.fwd.index().has_lcp()
            && ix.fwd.seg_count() == d + 1
            && ix.pi.len() == d + 1
            && ix.grids.iter().map(|g| g.1.len()).sum::<usize>() == d
            && ix.grids.windows(2).all(|w| w[0].0 < w[1].0)
            && ix.fwd.index().count_less(crate::suffix::FIRST_CODE) == 1 + k
            && ix.grid_points().iter().all(|&(g, _, y)| {
                (1..=d + 1).contains(&(y as usize)) && ix.pi(y as usize) > 0 && ix.seg.k(ix.pi(y as usize) - 1) == g
            });
        if !consistent {
            return Err(codec::corrupt("header does not match components"));
        }
        Ok(ix)
    }
}
