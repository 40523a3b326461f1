//! Compiles the guide's code listings as doctests.
//!
//! Each chapter in `book/src` is included as the docs of an empty module, so
//! `cargo test` runs every `rust` block and a failure names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/lattice.md")]
pub mod lattice {}
#[doc = include_str!("../../../book/src/digraph.md")]
pub mod digraph {}
#[doc = include_str!("../../../book/src/calculus.md")]
pub mod calculus {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/spectrum.md")]
pub mod spectrum {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
