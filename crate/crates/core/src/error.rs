use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at token {position} in {input:?}: {message}")]
    Parse { input: String, position: usize, message: String },

    #[error("part {0} is not a positive integer")]
    NonPositivePart(u32),

    #[error("sequence {0:?} is not weakly decreasing")]
    NotDecreasing(Vec<u32>),

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("invalid refinement: {0}")]
    InvalidRefinement(String),

    #[error("relation has a cycle through element {0}")]
    Cycle(usize),

    #[error("element sets overlap at element {0}")]
    Overlap(usize),

    #[error("key is not monotone: element {lower} lies below {upper} but has a larger key")]
    NotMonotone { lower: usize, upper: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a member of the age")]
    NotMember(String),

    #[error("base realizer does not verify: {0}")]
    BaseNotVerified(String),

    #[error("word contains a symbol outside the allowed alphabet: {0}")]
    DisallowedSymbol(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
