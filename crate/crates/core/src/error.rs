use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("exp is only defined for series with zero constant term")]
    NonzeroConstantTerm,

    #[error("negative argument: {0}")]
    NegativeArgument(String),

    #[error("unknown method {0:?} (expected one of series, thm1, eq17, thm4, binom-closed-form)")]
    UnknownMethod(String),

    #[error("unknown identity {name:?}; valid ids: {valid}")]
    UnknownIdentity { name: String, valid: String },

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        // Keep diagnostics short even for pathological inputs.
        let input = if input.len() > 64 {
            let mut end = 64;
            while !input.is_char_boundary(end) {
                end -= 1;
            }
            format!("{}...", &input[..end])
        } else {
            input.to_string()
        };
        Error::Parse {
            what,
            input,
            reason: reason.into(),
        }
    }
}
