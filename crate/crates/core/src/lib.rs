//! Dimension of ages of compositions and partitions under the generalized subword order.
//!
//! The crate provides the order engine (compositions, generalized words, partitions), finite
//! posets with refinement families, an exact dimension solver, crown generators, realizer
//! builders for the finite dimensional ages, and a classifier deciding finite dimensionality.

pub mod bits;
pub mod builders;
pub mod classifier;
pub mod crowns;
pub mod dimension;
pub mod error;
pub mod order;
pub mod par;
pub mod poset;

pub use error::{Error, Result};
pub use par::Exec;
