use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("duplicate branch: `{0}` and `{1}` define the same curve")]
    DuplicateBranch(String, String),
    #[error("unsupported coefficient: {0}")]
    UnsupportedCoefficient(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
