//! Suffix array construction, BWT and the compressed suffix array built on it.

mod alphabet;
mod construct;
mod lcp;
mod range;
mod sequence;
mod wavelet;

pub use alphabet::{Alphabet, Symbol, FIRST_CODE, SENTINEL, UNKNOWN, WILDCARD};
pub use construct::{lcp_array, suffix_array};
pub use lcp::LcpSupport;
pub use range::{MatchingStatistics, MsEntry, SuffixRange};
pub use sequence::{IndexOptions, SequenceIndex, DEFAULT_SAMPLE_RATE};
pub use wavelet::WaveletMatrix;
