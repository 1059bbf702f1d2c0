use thiserror::Error;

/// Error taxonomy shared by every solver and construction in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the operation's domain (bad probability,
    /// empty query set, mismatched sizes, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A result would exceed the representable graph size.
    #[error("size error: {0}")]
    Size(String),

    /// The instance is beyond the configured search budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A stated precondition does not hold for the given input. Carries a
    /// human-readable witness where one exists (e.g. a clique or a cycle).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed input text; `offset` is a byte offset into the input.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    /// A construction failed its own structural self-checks. This signals a
    /// bug (e.g. broken field arithmetic), not bad user input.
    #[error("construction self-check failed: {0}")]
    Construction(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
