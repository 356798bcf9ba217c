//! Compositions, partitions, generalized words and their embedding relations.

mod composition;
mod partition;
pub mod render;
mod word;

pub use composition::{digits, strip_core, Composition};
pub use partition::{conjugate, partition_le, young_join, young_join_all, Partition};
pub use word::{
    age_member, age_truncation, finite_age, subword_embedding, subword_le, GeneralizedWord,
    TruncationSpec, WordSymbol,
};
