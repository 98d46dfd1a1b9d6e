use thiserror::Error;

use crate::class::TargetClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown atom id {0}")]
    UnknownAtomId(u32),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("rule {0} is not Horn")]
    NotHorn(usize),

    #[error("program is not in {0}")]
    NotInClass(TargetClass),

    #[error("{0} is not an acyclicity class")]
    NotAcyclicClass(TargetClass),

    #[error("atom set is not a strong {0} backdoor")]
    InvalidBackdoor(TargetClass),

    #[error("rule {rule} keeps {remaining} head atoms outside the backdoor")]
    DisjunctiveRemainder { rule: usize, remaining: usize },

    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("mode `{0}` needs an atom")]
    MissingAtom(String),

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("invalid hitting-set input: {0}")]
    HittingSet(String),
}

pub type Result<T> = std::result::Result<T, Error>;
