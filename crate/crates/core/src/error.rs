use thiserror::Error;

use crate::decimal::ExactDecimal;
use crate::notation::NotationKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// No grammar matched; `input` is the span that failed.
    #[error("syntax error in `{input}`: {reason}")]
    Syntax { input: String, reason: String },

    #[error("`{input}` is ambiguous: {kinds:?} match with different intervals")]
    Ambiguous {
        input: String,
        kinds: Vec<NotationKind>,
    },

    #[error("empty interval: lower bound {lo} exceeds upper bound {hi}")]
    EmptyInterval { lo: ExactDecimal, hi: ExactDecimal },

    #[error(
        "`{input}` is a bare numeral (single-number notation), which is disabled; \
         write `{input}*` for star notation or enable single-number parsing"
    )]
    GatedNotation { input: String },

    #[error("interval {interval} cannot be written in {kind} notation: {reason}")]
    NotRepresentable {
        interval: String,
        kind: NotationKind,
        reason: String,
    },

    #[error("bound {bound} has a single significant digit and cannot be inflated further")]
    Terminal { bound: ExactDecimal },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn syntax(input: &str, reason: impl Into<String>) -> Self {
        Error::Syntax {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
