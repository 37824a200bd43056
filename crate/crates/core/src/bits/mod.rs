//! Bit-level building blocks: rank/select bit vectors, packed integer
//! arrays and balanced parentheses.

mod int_array;
pub(crate) mod min_tree;
mod parens;
mod rank_select;

pub(crate) use int_array::bit_width;
pub use int_array::CompressedIntegerArray;
pub use parens::{BalancedParentheses, Paren};
pub use rank_select::{BitVecBuilder, RankSelectBitVector};
