use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("unknown element {0}")]
    UnknownElement(String),

    #[error("empty argument set at position {0}")]
    EmptyArgument(usize),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("scalar identity required: {0}")]
    IdentityRequired(String),

    #[error("hyperideal is not proper")]
    NotProper,

    #[error("multiplicative set meets the hyperideal in {0}")]
    DisjointnessViolated(String),

    #[error("not a hyperideal: {0}")]
    NotHyperideal(String),

    #[error("not a multiplicative set: {0}")]
    NotMultiplicative(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
