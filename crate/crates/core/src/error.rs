use thiserror::Error;

/// Errors surfaced by diagram parsing, graph surgery and relation generation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed diagram word: {0}")]
    MalformedWord(String),

    #[error("{operation} requires an unmarked input")]
    MarkedInput { operation: &'static str },

    #[error("invalid slide: {0}")]
    InvalidSlide(String),

    #[error("invalid four-term site: {0}")]
    InvalidFourTerm(String),

    #[error("vertex index {index} out of range for a graph on {order} vertices")]
    VertexOutOfRange { index: usize, order: usize },

    #[error("{operation} requires two distinct indices (got {index} twice)")]
    IdenticalIndices {
        operation: &'static str,
        index: usize,
    },

    #[error("degree {requested} exceeds the configured cap {cap} for {context}")]
    DegreeCap {
        requested: usize,
        cap: usize,
        context: &'static str,
    },

    #[error("unknown weight-system functional: {0}")]
    UnknownFunctional(String),

    #[error("unknown relation kind: {0}")]
    UnknownRelationKind(String),

    #[error("unknown diagram space: {0}")]
    UnknownSpace(String),

    #[error("combination term outside the analyzed basis: {0}")]
    TermOutsideBasis(String),

    #[error("relation kind {kind} is not defined on the {space} space")]
    KindSpaceMismatch {
        kind: &'static str,
        space: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
