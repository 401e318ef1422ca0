//! Pattern-avoiding permutations stratified by skew blocks.
//!
//! The crate counts permutations avoiding a set of patterns by length and by
//! number of skew blocks, implements the move maps that compare one-block and
//! two-block avoiders, checks the generating-function identities that tie the
//! strata together, and decides supercriticality of `F = 1/(1 - G)` for
//! rational `G`.
//!
//! ```
//! use skewperm::{Permutation, PatternSet, count_by_blocks};
//!
//! let table = count_by_blocks(4, &PatternSet::parse("132").unwrap()).unwrap();
//! let row: Vec<u32> = table.row(4).iter().map(|c| c.try_into().unwrap()).collect();
//! assert_eq!(row, [5, 5, 3, 1]);
//! assert!(Permutation::parse("3142").unwrap().is_skew_indecomposable());
//! ```

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod maps;
pub mod perm;
pub mod series;

pub use enumerate::{count_avoiders, count_by_blocks, enumerate_avoiders, CountTable, Enumerator, PatternSet};
pub use error::{Error, Result};
pub use perm::{Permutation, SkewDecomposition};
pub use series::{RationalFunction, SupercriticalVerdict, TruncatedSeries};
