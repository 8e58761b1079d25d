use thiserror::Error;

use crate::linalg::ModulePresentation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid complex at degree {degree}: {reason}")]
    InvalidComplex { degree: i64, reason: String },

    #[error("invalid chain map at degree {degree}: {reason}")]
    InvalidMap { degree: i64, reason: String },

    #[error("invalid homotopy at degree {degree}: {reason}")]
    InvalidHomotopy { degree: i64, reason: String },

    #[error("complex is not acyclic: H_{degree} = {group}")]
    NotAcyclic { degree: i64, group: ModulePresentation },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A checked theorem failed on a concrete input. Either the input escaped
    /// validation or the implementation is wrong; never a user error.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
