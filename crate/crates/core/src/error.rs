use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("comparison undecided within budget: {0}")]
    Undecided(String),
    #[error("enclosure exhausted: more input precision is required")]
    ExhaustedEnclosure,
    #[error("rational input: the irrationality measure function needs an irrational number")]
    RationalInput,
    #[error("cross-check failure: {0}")]
    CrossCheckFailure(String),
    #[error("oracle precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("pair rejected: {0}")]
    GuardRejected(String),
    #[error("{0}")]
    OutOfRange(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Short stable identifier used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Domain(_) => "domain",
            Error::DivisionByZero => "division-by-zero",
            Error::Undecided(_) => "undecided",
            Error::ExhaustedEnclosure => "exhausted-enclosure",
            Error::RationalInput => "rational-input",
            Error::CrossCheckFailure(_) => "cross-check-failure",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::GuardRejected(_) => "guard-rejected",
            Error::OutOfRange(_) => "out-of-range",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
