use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid network size {0}: a ring needs at least 3 nodes")]
    InvalidSize(usize),

    #[error("node {node} is out of range for a network of {size} nodes")]
    NodeOutOfRange { node: usize, size: usize },

    #[error("self-loop at node {0} is not a valid shortcut")]
    SelfLoop(u32),

    #[error("pair ({0}, {1}) duplicates a ring edge")]
    RingEdge(u32, u32),

    #[error("shortcut ({0}, {1}) already exists")]
    DuplicateShortcut(u32, u32),

    #[error("no admissible shortcut end for node {node}")]
    Saturated { node: u32 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A named structural constraint of a construction is violated.
    #[error("constraint {constraint} violated: {detail}")]
    Constraint { constraint: &'static str, detail: String },

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("instance {index}: {source}")]
    Instance {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Mismatch(String),
}

impl Error {
    /// Whether the error stems from invalid input rather than a failure
    /// while running.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Saturated { .. } | Error::Instance { .. } | Error::Mismatch(_)
        )
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn constraint(constraint: &'static str, detail: impl Into<String>) -> Self {
        Error::Constraint {
            constraint,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position: position.into(),
            message: message.into(),
        }
    }
}
