use crate::codec::{self, Decode, Encode, Reader};
use crate::error::{Error, Result};

/// Internal symbol code. `$` and the wildcard get the two smallest codes so
/// that they sort before every text character.
pub type Symbol = u32;

pub const SENTINEL: Symbol = 0;
pub const WILDCARD: Symbol = 1;
pub const FIRST_CODE: Symbol = 2;
/// Code for pattern characters that never occur in the text. It is outside
/// every index's alphabet, so searches for it come back empty.
pub const UNKNOWN: Symbol = Symbol::MAX;

/// Dense map from external bytes to codes `2..=sigma+1`, ordered by byte.
///
/// An optional *barrier* byte is a text character that no pattern character
/// can match; it separates records that must not be matched across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    codes: Vec<u16>,
    bytes: Vec<u8>,
    barrier: Option<u8>,
}

impl Alphabet {
    /// Collects the distinct bytes of `text`, skipping `wildcard`.
    pub fn from_text(text: &[u8], wildcard: Option<u8>, barrier: Option<u8>) -> Result<Self> {
        if barrier.is_some() && barrier == wildcard {
            return Err(Error::Argument("barrier byte must differ from the wildcard".into()));
        }
        let mut seen = [false; 256];
        for &b in text {
            seen[b as usize] = true;
        }
        if let Some(w) = wildcard {
            seen[w as usize] = false;
        }
        let bytes: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::from_bytes(bytes, barrier)
    }

    fn from_bytes(bytes: Vec<u8>, barrier: Option<u8>) -> Result<Self> {
        let mut codes = vec![0u16; 256];
        for (i, &b) in bytes.iter().enumerate() {
            if i > 0 && bytes[i - 1] >= b {
                return Err(Error::Corrupt("alphabet bytes not strictly increasing".into()));
            }
            codes[b as usize] = (i as Symbol + FIRST_CODE) as u16;
        }
        Ok(Alphabet { codes, bytes, barrier })
    }

    /// Number of distinct text characters (wildcard and sentinel excluded).
    pub fn sigma(&self) -> usize {
        self.bytes.len()
    }

    /// Codes used by texts over this alphabet, sentinel and wildcard included.
    pub fn code_count(&self) -> usize {
        self.bytes.len() + FIRST_CODE as usize
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn barrier(&self) -> Option<u8> {
        self.barrier
    }

    /// Text code of `b`, if it is part of the alphabet.
    pub fn code(&self, b: u8) -> Option<Symbol> {
        match self.codes[b as usize] {
            0 => None,
            c => Some(c as Symbol),
        }
    }

    /// Maps a query pattern; bytes absent from the text, and the barrier,
    /// become [`UNKNOWN`].
    pub fn encode_pattern(&self, pattern: &[u8]) -> Vec<Symbol> {
        pattern
            .iter()
            .map(|&b| match self.code(b) {
                Some(c) if Some(b) != self.barrier => c,
                _ => UNKNOWN,
            })
            .collect()
    }

    pub fn decode(&self, s: Symbol) -> Option<u8> {
        s.checked_sub(FIRST_CODE).and_then(|i| self.bytes.get(i as usize).copied())
    }
}

impl Encode for Alphabet {
    fn encode(&self, out: &mut Vec<u8>) {
        codec::put_bytes(out, &self.bytes);
        match self.barrier {
            Some(b) => {
                codec::put_u8(out, 1);
                codec::put_u8(out, b);
            }
            None => codec::put_u8(out, 0),
        }
    }
}

impl Decode for Alphabet {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let bytes = r.bytes()?;
        let barrier = match r.u8()? {
            0 => None,
            1 => Some(r.u8()?),
            f => return Err(codec::corrupt(format!("bad barrier flag {f}"))),
        };
        Self::from_bytes(bytes, barrier).map_err(|e| codec::corrupt(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_follow_byte_order() {
        let a = Alphabet::from_text(b"ca?ab", Some(b'?'), None).unwrap();
        assert_eq!(a.sigma(), 3);
        assert_eq!(a.code(b'a'), Some(2));
        assert_eq!(a.code(b'b'), Some(3));
        assert_eq!(a.code(b'c'), Some(4));
        assert_eq!(a.code(b'?'), None);
        assert_eq!(a.encode_pattern(b"azc"), vec![2, UNKNOWN, 4]);
        assert_eq!(a.decode(3), Some(b'b'));
        assert_eq!(a.decode(WILDCARD), None);
        const { assert!(SENTINEL < WILDCARD && WILDCARD < FIRST_CODE) };
    }

    #[test]
    fn barrier_never_matches() {
        let a = Alphabet::from_text(b"AC|GT", None, Some(b'|')).unwrap();
        assert!(a.code(b'|').is_some());
        assert_eq!(a.encode_pattern(b"C|G")[1], UNKNOWN);
    }
}
