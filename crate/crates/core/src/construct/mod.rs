//! Matrix constructions and their block decoders.
//!
//! * [`reduce_rows`] folds one row of each large transversal family into the
//!   others, turning a binary `d`-disjunct matrix into a shorter q-ary
//!   additive `(w, d)`-disjunct one.
//! * [`kronecker`] composes a binary `d`-disjunct outer matrix with an inner
//!   decodable matrix; [`decode_kronecker`] locates the nonzero blocks and
//!   decodes each through an isolating outer row.
//! * [`build_concatenation`] places scaled copies of a binary `d`-disjunct
//!   matrix side by side with base-`u` repunit weights;
//!   [`decode_concatenation`] peels the blocks from the heaviest down.

mod concat;
mod kron;
mod reduce;

pub use concat::{
    build_concatenation, decode_concatenation, ConcatDecode, ConcatenationDesign, FloorCheck,
};
pub use kron::{decode_kronecker, decode_kronecker_with, kronecker};
pub use reduce::{f_count, greedy_families, reduce_rows};
