use thiserror::Error;

/// Errors raised by the workbench. Every variant maps onto a distinct CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("domain is empty")]
    EmptyDomain,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{0} is not defined for partial functions")]
    PartialNotSupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point {0} lies outside the domain")]
    PointOutsideDomain(usize),
    #[error("formula is not read-once: {0}")]
    NotReadOnce(String),
    #[error("column {0} has no nonzero entry")]
    UncoveredColumn(usize),
    #[error("post-selection impossible at point {0}: p(x) = q(x) = 0")]
    PostselectionImpossible(usize),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}
