//! The guide's chapters, compiled as documentation so that every Rust snippet
//! in `book/src` runs under `cargo test`. One module per chapter keeps a
//! failing snippet traceable to its file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}
#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/maps.md")]
pub mod maps {}
#[doc = include_str!("../../../book/src/supercritical.md")]
pub mod supercritical {}
#[doc = include_str!("../../../book/src/classify.md")]
pub mod classify {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
