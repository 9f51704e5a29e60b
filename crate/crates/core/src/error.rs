use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("empty truncation: no element of the set lies in [1, {0}]")]
    EmptyTruncation(u64),

    #[error("set literal {literal:?}: {reason}")]
    SetLiteral { literal: String, reason: String },

    #[error("exact value requested for an approximate set")]
    ApproximateSet,

    #[error("graph schema violation: {0}")]
    Schema(String),

    #[error("loop edge at vertex {0:?}")]
    Loop(String),

    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),

    #[error("duplicate edge ({0:?}, {1:?})")]
    DuplicateEdge(String, String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("empty shift: the essential graph has no vertices")]
    EmptyShift,

    #[error("combinatorial cap exceeded: more than {cap} {what}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("builder needs at least 2 sets, got {0}")]
    TooFewSets(usize),

    #[error("divergent generating-matrix entry at vertex {vertex:?} (x = {x})")]
    DivergentEntry { vertex: String, x: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("not weakly specified: {0}")]
    NotWeaklySpecified(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("lift obstruction: {0}")]
    Obstruction(String),

    #[error("beta expansion: {0}")]
    Expansion(String),

    #[error("series arithmetic: {0}")]
    Series(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
