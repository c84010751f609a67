use thiserror::Error;

/// Every failure the library can report.
///
/// Input-shaped problems (bad vertices, bad parameters) are separated from
/// `Precondition` (a theorem's hypothesis does not hold for this graph),
/// `UnsupportedCase` (a rewriting rule outside the implemented tables) and
/// `Defect` (an internal consistency check failed).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("graph has {count} vertices; at most {max} are supported")]
    TooManyVertices { count: usize, max: usize },
    #[error("empty vertex set: {0}")]
    EmptySet(&'static str),
    #[error("the two vertices must be distinct (got `{0}` twice)")]
    SameVertex(String),
    #[error("vertices `{0}` and `{1}` are adjacent")]
    AdjacentPair(String, String),
    #[error("graph must be connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition failed: {clause}")]
    Precondition { clause: String },
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("no maximal SIL-pair system exists: {0}")]
    NoMaximalSystem(String),
    #[error("partial conjugation could not be classified: {0}")]
    Unclassified(String),
    #[error("internal consistency failure: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn precondition(clause: impl Into<String>) -> Self {
        Error::Precondition {
            clause: clause.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
