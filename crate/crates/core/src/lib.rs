//! Open partitions of finite posets.
//!
//! The library enumerates and counts the open partitions of a poset by brute
//! force, and counts those of a V-poset (two chains sharing a minimal root)
//! through a bijection with pairs of chain partitions plus a join level. The
//! [`counting`] module evaluates the resulting closed and summation formulas
//! exactly.

pub mod counting;
pub mod error;
pub mod poset;
pub mod render;
pub mod vposet;

pub use counting::{BigCount, Formula, Rational};
pub use error::{Error, Result};
pub use poset::{
    build_poset, count_open_partitions, enumerate_open_partitions, enumerate_set_partitions,
    is_open, quotient_relation, BlockRelation, Partition, Poset, PosetDoc, VertexId,
    DEFAULT_BRUTE_FORCE_CAP,
};
pub use render::{to_dot, RenderSpec, DEFAULT_PALETTE};
pub use vposet::{build_vposet, decode, encode, enumerate_triples, VPoset, VTriple};
