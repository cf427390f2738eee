use thiserror::Error;

use crate::eca::{BoundaryCondition, Rule};
use crate::reversibility::CollisionWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed a resource guard.
    #[error("capacity error: {what} = {requested} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// The operation is well-formed but has no construction for these inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The automaton is not injective, so no circuit can implement it.
    #[error("rule {rule} is not reversible for n = {n} at {bc} boundary")]
    NotReversible {
        rule: Rule,
        n: usize,
        bc: BoundaryCondition,
        witness: Option<Box<CollisionWitness>>,
    },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// An internal invariant failed; indicates a bug rather than bad input.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Capacity { .. } => "capacity",
            Error::Unsupported(_) => "unsupported",
            Error::NotReversible { .. } => "not-reversible",
            Error::Parse { .. } => "parse",
            Error::Invariant(_) => "invariant",
            Error::Io(_) => "io",
        }
    }
}
