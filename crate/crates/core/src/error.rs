use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Input outside an operation's contract.
    Rejected(String),
    /// `a_n >= b_n * c_n * d_n >= e_n` failed at this index.
    SandwichViolated { index: usize },
    /// A precondition of a sequence-level operation failed.
    Precondition { check: String },
    /// A witness violates a hypothesis clause of the condition it was offered for.
    HypothesisClause { clause: String, index: usize },
    /// A comparator was queried outside its domain `B`.
    OutsideDomain { t: f64, s: f64 },
    /// The self-map could not be evaluated.
    MapFailed { index: usize, reason: String },
}

impl Error {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }

    pub(crate) fn precondition(check: impl Into<String>) -> Self {
        Error::Precondition {
            check: check.into(),
        }
    }

    pub(crate) fn clause(clause: impl Into<String>, index: usize) -> Self {
        Error::HypothesisClause {
            clause: clause.into(),
            index,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Rejected(msg) => write!(f, "rejected input: {msg}"),
            Error::SandwichViolated { index } => {
                write!(f, "rejected input: sandwich precondition violated at index {index}")
            }
            Error::Precondition { check } => write!(f, "precondition: {check}"),
            Error::HypothesisClause { clause, index } => {
                write!(f, "hypothesis clause `{clause}` violated by witness term {index}")
            }
            Error::OutsideDomain { t, s } => {
                write!(f, "comparator queried outside its domain at ({t}, {s})")
            }
            Error::MapFailed { index, reason } => {
                write!(f, "map evaluation failed at orbit index {index}: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}
