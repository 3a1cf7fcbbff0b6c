//! Commutative subsemigroups of the full and partial transformation
//! semigroups on a finite set: constructions, exhaustive maximum searches
//! over commuting graphs, and the tree-based nullification of commutative
//! semigroups with a unique idempotent.
//!
//! Points are 0-based; maps act on the right, so `a.mul(b)` applies `a`
//! first.

pub mod clique;
pub mod commgraph;
pub mod constructions;
pub mod error;
pub mod oracle;
pub mod semigroup;
pub mod transform;
pub mod tree;
pub mod xi;

/// Largest supported degree. Images are stored as `u8`, and partial maps
/// reserve one extra point for "undefined".
pub const MAX_DEGREE: usize = 254;

pub use commgraph::{max_comm_subsemigroup, CommGraph};
pub use error::{Error, Result};
pub use semigroup::{EnumerationCaps, GroupClass, InvariantReport, SemigroupSet};
pub use transform::{
    Block, Element, IdempotentDecomposition, Kind, PartialTransformation, Transformation,
};
pub use xi::{xi_alpha, xi_table, XiAlpha};
