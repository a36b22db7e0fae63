use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`--`{1}`")]
    UnknownEdge(String, String),
    #[error("corpus too large: {0}")]
    CorpusTooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("illegal move: {player} at `{vertex}`")]
    IllegalMove { player: String, vertex: String },
    #[error("graph is not bipartite w.r.t. the given partition: edge `{0}`--`{1}`")]
    NotBipartite(String, String),
    #[error("parameter violation: {0}")]
    ParameterViolation(String),
    #[error("gadget hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid position: {0}")]
    InvalidPosition(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::Line {
            line,
            source: Box::new(self),
        }
    }

    /// The innermost error, with any line wrapper removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Line { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
