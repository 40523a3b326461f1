//! Nim-values of the achievement game `GEN(G)` for finite groups.
//!
//! Two players alternately pick unpicked elements of a finite group `G`;
//! the player whose pick makes the chosen elements generate `G` wins. This
//! crate computes the nim-value of that game through the *structure
//! digraph*, a quotient of the game tree by the interval closure
//! `⌈P⌉ = ⋂{M maximal | P ⊆ M}`, and checks the result against an
//! exhaustive game-tree oracle.
//!
//! It also computes the *feasible spectrum* of extended types, a fixed
//! point over sets of `(p, e, o, s)` quadruples that bounds every extended
//! type occurring in a group of even order.
//!
//! ```
//! use gengame::digraph::nim_value_of_game;
//!
//! assert_eq!(nim_value_of_game("Z6").unwrap(), 4);
//! assert_eq!(nim_value_of_game("S3").unwrap(), 3);
//! ```
//!
//! The guide in `book/` walks through the concepts with runnable examples.

pub mod calculus;
pub mod corpus;
pub mod digraph;
pub mod error;
pub mod group;
pub mod lattice;
pub mod oracle;
pub mod set;
pub mod spectrum;

pub use calculus::{emex_p, is_feasible, mex, mex_p, ExtendedType, Type};
pub use digraph::{nim_value_of_game, StructureClass, StructureDigraph};
pub use error::{Error, Result};
pub use group::{build_group, parity, Group};
pub use lattice::SubgroupLattice;
pub use oracle::NimTable;
pub use set::ElementSet;
pub use spectrum::{feasible_spectrum, SpectrumLayers, SpectrumOptions};
