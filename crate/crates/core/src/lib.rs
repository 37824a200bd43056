//! Succinct full-text dictionary and wildcard text index.
//!
//! A text such as `ab??ca?ab` is split into wildcard-free segments separated
//! by groups of wildcards. [`WildcardIndex`] answers exact pattern queries
//! where a wildcard position matches any single character.

pub mod bits;
pub mod codec;
pub mod dictionary;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod suffix;
pub mod wildcard;

pub use dictionary::{EnclosingInterval, FullTextDictionary};
pub use error::{Error, Result};
pub use grid::PointGrid;
pub use suffix::{Alphabet, IndexOptions, SequenceIndex, SuffixRange};
pub use wildcard::{MatchResult, QueryOutput, TypeThreeWorkspace, WildcardIndex};
