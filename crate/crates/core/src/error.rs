use thiserror::Error;

/// Errors shared by all engine operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("atom `{0}` is not in the vocabulary")]
    MissingAtom(String),
    #[error("vocabulary has {size} atoms, exceeding the cap of {cap}")]
    VocabularyTooLarge { size: usize, cap: usize },
    #[error("knowledge base has {count} items, exceeding the cap of {cap}")]
    TooManyItems { count: usize, cap: usize },
    #[error("penalty must be strictly positive, got {0}")]
    NonPositivePenalty(String),
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("sub-theory tag {0} does not belong to this knowledge base")]
    ForeignTag(usize),
    #[error("item {index} (`{formula}`) is not a clause")]
    NonClausal { index: usize, formula: String },
    #[error("item {index} has non-integral weight {weight}")]
    NonIntegralWeight { index: usize, weight: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("premise is unsatisfiable")]
    UnsatisfiablePremise,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
