use thiserror::Error;

use crate::ordinal::Ordinal;

/// Error raised by a syntax front end, with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("ordinal {0} is not a limit")]
    NotLimit(Ordinal),
    #[error("schema denotes a finite set")]
    FiniteSchema,
    #[error("query is not a subset of the target carrier")]
    NotASubset,
    #[error("containment of the query in the target carrier could not be decided")]
    UnknownContainment,
    #[error("query already belongs to the ideal")]
    InIdeal,
    #[error("block quotient exceeds {limit} representatives")]
    QuotientOverflow { limit: usize },
    #[error("malformed term: {0}")]
    Malformed(String),
}

impl Error {
    /// True for errors that report a violated operation precondition rather
    /// than malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotLimit(_)
                | Error::FiniteSchema
                | Error::NotASubset
                | Error::UnknownContainment
                | Error::InIdeal
                | Error::QuotientOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
