use thiserror::Error;

use crate::half::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid segment [{lo},{hi}]: {reason}")]
    InvalidSegment {
        lo: HalfInt,
        hi: HalfInt,
        reason: &'static str,
    },
    #[error("empty segment where a non-empty one is required")]
    EmptySegment,
    #[error("atom outside its parameter domain: {0}")]
    AtomDomain(String),
    #[error("no closed-form Jacquet module for {0}")]
    NoClosedForm(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("parameters outside the claim domain: {0}")]
    Domain(String),
    #[error("fact catalog: {0}")]
    Catalog(String),
}

impl Error {
    /// Syntax errors, as opposed to well-formed input naming an invalid object.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
